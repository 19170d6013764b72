#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equivix/chern_index.hpp"
#include "equivix/cli.hpp"
#include "equivix/clifford.hpp"
#include "equivix/deformation.hpp"
#include "equivix/isometry.hpp"
#include "equivix/symbols.hpp"
#include "equivix/test_function.hpp"

namespace py = pybind11;
using namespace equivix;

namespace {

py::dict index_dict(const IndexResult& r) {
  py::dict d;
  d["method"] = r.method;
  d["g_description"] = r.g_description;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  d["evaluations"] = r.evaluations;
  d["converged"] = r.converged;
  d["n_g"] = r.n_g;
  d["det_normal"] = r.det_normal;
  return d;
}

IsometryAction action_for(const SymbolField& a, const std::string& g) {
  return symbol_action(a, parse_group_spec(g, a.n));
}

}  // namespace

PYBIND11_MODULE(_equivix, m) {
  m.doc() = "equivariant index computations";

  static py::exception<Error> error_type(m, "EquivixError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.code())) + ": " + e.what();
      PyErr_SetString(error_type.ptr(), msg.c_str());
    }
  });

  py::class_<CliffordAlgebra>(m, "CliffordAlgebra")
      .def(py::init<int>(), py::arg("n_half"))
      .def_property_readonly("dim", &CliffordAlgebra::dim)
      .def_property_readonly("even_dim", &CliffordAlgebra::even_dim)
      .def_property_readonly("generators", &CliffordAlgebra::generators)
      .def("label", &CliffordAlgebra::label)
      .def("left_mult", &CliffordAlgebra::left_mult)
      .def("twisted_right_mult", &CliffordAlgebra::twisted_right_mult)
      .def("so_action", &CliffordAlgebra::so_action)
      .def("grading", &CliffordAlgebra::grading);

  py::class_<SymbolField>(m, "Symbol")
      .def_readonly("n", &SymbolField::n)
      .def_readonly("dim_v", &SymbolField::dim_v)
      .def_readonly("dim_w", &SymbolField::dim_w)
      .def_readonly("order", &SymbolField::order)
      .def_readonly("name", &SymbolField::name)
      .def("__call__", [](const SymbolField& a, const Vec& z) { return a(z); });

  m.def("symbol", &parse_symbol_spec, py::arg("spec"), "bott-dirac:N or a symbol file");
  m.def("graph_projection", [](const SymbolField& a, const Vec& z) { return graph_projection(a, z).m; });
  m.def("hat_projection", [](const SymbolField& a, const Vec& z) { return hat_projection(a, z).m; });
  m.def(
      "chern_integrand",
      [](const SymbolField& a, const std::string& g, const Vec& w) {
        return chern_integrand(a, action_for(a, g), w);
      },
      py::arg("symbol"), py::arg("g"), py::arg("w"));
  m.def(
      "index",
      [](const SymbolField& a, const std::string& g, const std::string& method, int nodes,
         int max_level, double rel_tol) {
        QuadratureConfig q;
        q.nodes = nodes;
        q.max_level = max_level;
        q.rel_tol = rel_tol;
        return index_dict(compute_index(a, action_for(a, g), parse_index_method(method), q));
      },
      py::arg("symbol"), py::arg("g") = "identity", py::arg("method") = "auto", py::arg("nodes") = 16,
      py::arg("max_level") = 2, py::arg("rel_tol") = 1e-6);
  m.def(
      "fixed_space",
      [](const RMat& g) {
        const IsometryAction a = analyze_isometry(g, Mat::Identity(1, 1), Mat::Identity(1, 1));
        return py::make_tuple(a.n_g, a.det_normal);
      },
      py::arg("g"));

  m.def(
      "rho_hbar_gaussian",
      [](int n, double alpha, double beta, double hbar, int cutoff, double length) {
        HermiteBasisConfig cfg;
        cfg.n = n;
        cfg.cutoff = cutoff;
        cfg.length = length;
        return rho_hbar(TestFunction::gaussian(n, alpha, beta), hbar, make_basis(cfg)).matrix;
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("hbar"), py::arg("cutoff"),
      py::arg("length") = 1.0);

  m.def(
      "run",
      [](const std::string& command, const std::string& symbol, const std::string& g,
         const std::string& method, const std::string& input, std::optional<std::uint64_t> seed) {
        cli::RunManifest rm;
        rm.command = command;
        rm.symbol = symbol;
        rm.g = g;
        rm.method = method;
        rm.input = input;
        rm.seed = seed;
        const cli::CommandOutput out = cli::run(rm);
        return py::make_tuple(out.exit_code, out.body);
      },
      py::arg("command"), py::arg("symbol") = "", py::arg("g") = "identity", py::arg("method") = "auto",
      py::arg("input") = "", py::arg("seed") = py::none(),
      "Run a CLI command in process; returns (exit_code, body).");
}
