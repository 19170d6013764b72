#include "equivix/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "equivix/chern_index.hpp"
#include "equivix/clifford.hpp"
#include "equivix/cocycle.hpp"
#include "equivix/defaults_json.hpp"
#include "equivix/deformation.hpp"
#include "equivix/isometry.hpp"
#include "equivix/symbols.hpp"
#include "equivix/test_function.hpp"

namespace equivix::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Usage:
    case ErrorCode::Parse:
    case ErrorCode::WrongMethod:
      return kExitUsage;
    case ErrorCode::QuadratureFailure:
    case ErrorCode::NumericFailure:
      return kExitNumeric;
    default:
      return kExitProperty;
  }
}

const json& defaults() {
  static const json j = json::parse(generated::kDefaultsJson);
  return j;
}

const json& default_manifest() {
  static const json j = json::parse(generated::kDefaultManifestJson);
  return j;
}

namespace {

bool is_builtin_symbol(const std::string& s) { return s.rfind("bott-dirac:", 0) == 0; }

bool is_builtin_group(const std::string& s) {
  return s == "identity" || s.rfind("rotation:", 0) == 0 || s.rfind("blockrot:", 0) == 0;
}

// Relative file references in a manifest are resolved against its directory.
std::string resolve(const std::string& spec, const std::string& base_dir) {
  if (spec.empty() || base_dir.empty() || fs::path(spec).is_absolute()) return spec;
  return (fs::path(base_dir) / spec).string();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

QuadratureConfig default_quadrature() {
  return QuadratureConfig::from_json(defaults().at("quadrature"), QuadratureConfig{});
}

CommandOutput failure(const Error& e) {
  CommandOutput out;
  out.exit_code = exit_code_for(e.code());
  out.body = json{{"error", to_string(e.code())}, {"message", e.what()}}.dump(2) + "\n";
  out.message = std::string(to_string(e.code())) + ": " + e.what();
  return out;
}

std::uint64_t seed_of(const std::optional<std::uint64_t>& s) {
  return s ? *s : defaults().at("verify").at("seed").get<std::uint64_t>();
}

}  // namespace

std::vector<std::string> RunManifest::referenced_files() const {
  std::vector<std::string> files;
  if (!symbol.empty() && !is_builtin_symbol(symbol)) files.push_back(symbol);
  if (command == "index" && !g.empty() && !is_builtin_group(g)) files.push_back(g);
  if (!input.empty()) files.push_back(input);
  return files;
}

void RunManifest::validate() const {
  if (command != "index" && command != "verify" && command != "converge") {
    throw Error(ErrorCode::Usage, "unknown command '" + command + "'");
  }
  if (command == "index" && symbol.empty()) {
    throw Error(ErrorCode::Usage, "index needs --symbol");
  }
  if (command == "converge" && input.empty()) {
    throw Error(ErrorCode::Usage, "converge needs an experiment file");
  }
  if (tol && !(*tol > 0.0)) throw Error(ErrorCode::Usage, "--tol must be positive");
  if (nodes && *nodes < 8) throw Error(ErrorCode::Usage, "--nodes must be at least 8");
  if (max_level && *max_level < 0) throw Error(ErrorCode::Usage, "--max-level must be >= 0");
  for (const auto& f : referenced_files()) {
    if (!fs::exists(f)) throw Error(ErrorCode::Parse, "missing file " + f);
  }
}

// ---------------------------------------------------------------- index

CommandOutput cmd_index(const RunManifest& m) {
  try {
    m.validate();
    const SymbolField a = parse_symbol_spec(m.symbol);
    const GroupSpec gs = parse_group_spec(m.g, a.n);
    const IndexMethod method = parse_index_method(m.method);

    QuadratureConfig q = default_quadrature();
    if (m.tol) q.rel_tol = *m.tol;
    if (m.nodes) q.nodes = *m.nodes;
    if (m.max_level) q.max_level = *m.max_level;
    q.validate();
    IsometryOptions iso;
    iso.fixed_tol = defaults().at("isometry").at("fixed_tol").get<double>();
    const double det_floor = defaults().at("isometry").at("det_floor").get<double>();

    const IsometryAction act = symbol_action(a, gs, iso);

    SamplingConfig sc;
    sc.seed = seed_of(m.seed);
    sc.directions = defaults().at("ellipticity").at("directions").get<int>();
    const CheckReport ell = ellipticity_check(a, defaults().at("ellipticity").at("C").get<double>(),
                                              defaults().at("ellipticity").at("R").get<double>(), sc);
    const CheckReport eqv = equivariance_check(a, act, sc);

    json out;
    out["symbol"] = a.name;
    out["checks"] = json::array({ell.to_json(), eqv.to_json()});
    if (!ell.pass || !eqv.pass) {
      CommandOutput res;
      res.exit_code = kExitProperty;
      out["error"] = "precondition";
      out["defaults"] = defaults();
      res.body = out.dump(2) + "\n";
      res.message = std::string("precondition: ") + (!ell.pass ? ell.name : eqv.name) + " failed";
      return res;
    }

    const IndexResult r = compute_index(a, act, method, q, det_floor);
    json rj = r.to_json();
    rj.update(out);
    rj["quadrature"] = q.to_json();
    rj["defaults"] = defaults();

    CommandOutput res;
    res.exit_code = r.converged ? kExitOk : kExitNumeric;
    res.body = rj.dump(2) + "\n";
    if (!r.converged) res.message = "quadrature-failure: refinement did not reach tolerance";
    return res;
  } catch (const Error& e) {
    return failure(e);
  } catch (const std::exception& e) {
    return failure(Error(ErrorCode::NumericFailure, e.what()));
  }
}

// ---------------------------------------------------------------- verify

namespace {

CheckReport make_report(std::string name, bool pass, double margin, int samples,
                        std::string detail = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.pass = pass;
  r.worst_margin = margin;
  r.samples = samples;
  r.detail = std::move(detail);
  return r;
}

RMat random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  Eigen::HouseholderQR<RMat> qr(m);
  RMat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

CheckReport clifford_relations(int n_half, std::mt19937_64& rng) {
  const CliffordAlgebra alg(n_half);
  const int k = alg.generators();
  const Mat id = Mat::Identity(alg.dim(), alg.dim());
  std::vector<Mat> c, ch;
  for (int i = 1; i <= k; ++i) {
    c.push_back(alg.left_mult(i));
    ch.push_back(alg.twisted_right_mult(i));
  }
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double delta = (i == j) ? 2.0 : 0.0;
      const Mat cc = c[i] * c[j] + c[j] * c[i] - delta * id;
      const Mat hh = ch[i] * ch[j] + ch[j] * ch[i] + delta * id;
      const Mat ch_mixed = c[i] * ch[j] + ch[j] * c[i];
      worst = std::max({worst, cc.cwiseAbs().maxCoeff(), hh.cwiseAbs().maxCoeff(),
                        ch_mixed.cwiseAbs().maxCoeff()});
    }
  }
  // The SO(2n) action must be a representation and intertwine c(v).
  for (int t = 0; t < 3; ++t) {
    const RMat g1 = random_rotation(k, rng);
    const RMat g2 = random_rotation(k, rng);
    const Mat prod = alg.so_action(g1 * g2) - alg.so_action(g1) * alg.so_action(g2);
    worst = std::max(worst, prod.cwiseAbs().maxCoeff());
    const Mat s = alg.so_action(g1);
    for (int i = 0; i < k; ++i) {
      Mat cv = Mat::Zero(alg.dim(), alg.dim());
      for (int l = 0; l < k; ++l) cv += g1(l, i) * c[l];
      worst = std::max(worst, (s * c[i] - cv * s).cwiseAbs().maxCoeff());
    }
  }
  return make_report("clifford(n_half=" + std::to_string(n_half) + ")", worst <= 1e-12, worst,
                     k * k + 3);
}

TestFunction random_test_function(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> width(0.4, 1.2);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  std::uniform_int_distribution<int> power(0, 1);
  std::vector<TestTerm> terms;
  for (int t = 0; t < 2; ++t) {
    TestTerm term;
    term.coeff = cplx(shift(rng) * 2.0, shift(rng) * 2.0);
    for (int k = 0; k < n; ++k) {
      term.factors.push_back(
          Factor1D{power(rng), width(rng), shift(rng), power(rng), width(rng), shift(rng)});
    }
    terms.push_back(std::move(term));
  }
  return TestFunction(n, std::move(terms));
}

CheckReport epsilon_cocycle_check(int tuples, const QuadratureConfig& q, std::mt19937_64& rng) {
  const IsometryAction act =
      analyze_isometry(RMat::Identity(1, 1), Mat::Identity(1, 1), Mat::Identity(1, 1));
  EpsilonOptions opts;
  opts.quadrature = q;
  opts.check_invariance = false;
  const int degree = 2 * act.n_g;
  std::vector<std::vector<TestFunction>> args;
  for (int t = 0; t < tuples; ++t) {
    std::vector<TestFunction> tup;
    for (int k = 0; k < degree + 2; ++k) tup.push_back(random_test_function(1, rng));
    args.push_back(std::move(tup));
  }
  bool converged = true;
  auto phi = [&](const std::vector<TestFunction>& fs) {
    std::vector<MatrixField> fields;
    for (const auto& f : fs) fields.push_back(f.field());
    const QuadratureResult r = epsilon_cocycle(act, Mat(), fields, opts);
    converged = converged && r.converged;
    return r.value;
  };
  auto mul = [](const TestFunction& x, const TestFunction& y) { return x * y; };
  const double tol = std::max(100.0 * q.rel_tol, 1e-10);
  const CocycleReport rep = cocycle_check<TestFunction>(phi, degree, args, mul, tol);
  const double margin = std::max(rep.max_coboundary, rep.max_cyclic_defect) / std::max(1.0, rep.scale);
  CheckReport out = make_report("epsilon-cocycle", rep.pass && converged, margin, rep.tuples,
                                rep.to_json().dump());
  if (!converged) out.detail += " (quadrature did not converge)";
  return out;
}

CheckReport omega_cocycle_check(int tuples, int cutoff, double hbar, std::mt19937_64& rng) {
  const IsometryAction act =
      analyze_isometry(RMat::Identity(1, 1), Mat::Identity(1, 1), Mat::Identity(1, 1));
  HermiteBasisConfig cfg;
  cfg.n = 1;
  cfg.cutoff = cutoff;
  cfg.length = std::sqrt(hbar);
  const BasisPtr basis = make_basis(cfg);
  const Mat ghat = Mat::Identity(basis->dim(), basis->dim());
  const int degree = 2 * act.n_g;
  std::vector<std::vector<DeformedOperator>> args;
  for (int t = 0; t < tuples; ++t) {
    std::vector<DeformedOperator> tup;
    for (int k = 0; k < degree + 2; ++k) tup.push_back(rho_hbar(random_test_function(1, rng), hbar, basis));
    args.push_back(std::move(tup));
  }
  auto phi = [&](const std::vector<DeformedOperator>& ts) { return omega_g(act, ghat, ts); };
  auto mul = [](const DeformedOperator& x, const DeformedOperator& y) {
    return DeformedOperator{x.matrix * y.matrix, x.hbar, x.basis};
  };
  const CocycleReport rep = cocycle_check<DeformedOperator>(phi, degree, args, mul, 1e-6);
  const double margin = std::max(rep.max_coboundary, rep.max_cyclic_defect) / std::max(1.0, rep.scale);
  return make_report("omega-cocycle", rep.pass, margin, rep.tuples, rep.to_json().dump());
}

// A manifest entry after parsing; holds everything needed to run it.
struct PreparedCheck {
  json entry;
  std::string kind;
  std::optional<SymbolField> symbol;
  std::optional<GroupSpec> group;
};

std::string describe(const PreparedCheck& c) {
  std::string s = c.kind;
  std::vector<std::string> parts;
  if (c.entry.contains("symbol")) parts.push_back(c.entry.at("symbol").get<std::string>());
  if (c.entry.contains("g")) parts.push_back(c.entry.at("g").get<std::string>());
  if (c.entry.contains("matrix")) parts.push_back("matrix");
  if (!parts.empty()) {
    s += "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
    s += ")";
  }
  return s;
}

RMat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "matrix must be a nested array");
  const int rows = static_cast<int>(j.size());
  RMat m(rows, rows);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != rows) {
      throw Error(ErrorCode::Parse, "matrix must be square");
    }
    for (int k = 0; k < rows; ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

PreparedCheck prepare(const json& entry, const std::string& base_dir) {
  PreparedCheck c;
  c.entry = entry;
  if (!entry.is_object() || !entry.contains("kind")) {
    throw Error(ErrorCode::Parse, "every check needs a \"kind\"");
  }
  c.kind = entry.at("kind").get<std::string>();
  static const std::vector<std::string> kinds{"clifford",    "projection", "ellipticity",
                                              "equivariance", "isometry",   "epsilon-cocycle",
                                              "omega-cocycle"};
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) {
    throw Error(ErrorCode::Parse, "unknown check kind '" + c.kind + "'");
  }
  if (entry.contains("symbol")) {
    std::string spec = entry.at("symbol").get<std::string>();
    if (!is_builtin_symbol(spec)) spec = resolve(spec, base_dir);
    c.symbol = parse_symbol_spec(spec);
  } else if (c.kind == "projection" || c.kind == "ellipticity" || c.kind == "equivariance") {
    throw Error(ErrorCode::Parse, c.kind + " check needs a \"symbol\"");
  }
  if (entry.contains("g")) {
    std::string spec = entry.at("g").get<std::string>();
    if (!is_builtin_group(spec)) spec = resolve(spec, base_dir);
    const int n = c.symbol ? c.symbol->n : entry.value("n", 0);
    if (n <= 0) throw Error(ErrorCode::Parse, "group spec needs a dimension \"n\"");
    c.group = parse_group_spec(spec, n);
  } else if (entry.contains("matrix")) {
    GroupSpec gs;
    gs.g = matrix_from_json(entry.at("matrix"));
    gs.description = "matrix";
    c.group = gs;
  } else if (c.kind == "equivariance" || c.kind == "isometry") {
    throw Error(ErrorCode::Parse, c.kind + " check needs \"g\" or \"matrix\"");
  }
  return c;
}

CheckReport run_check(const PreparedCheck& c, std::uint64_t seed, const json& verify_defaults) {
  std::mt19937_64 rng(seed);
  const json& e = c.entry;
  const std::string name = describe(c);
  try {
    if (c.kind == "clifford") {
      std::vector<int> halves = e.value("n_half", std::vector<int>{1, 2});
      double worst = 0.0;
      bool pass = true;
      int samples = 0;
      for (int h : halves) {
        const CheckReport r = clifford_relations(h, rng);
        worst = std::max(worst, r.worst_margin);
        pass = pass && r.pass;
        samples += r.samples;
      }
      return make_report(name, pass, worst, samples);
    }
    if (c.kind == "projection") {
      const int points = e.value("points", verify_defaults.at("points").get<int>());
      CheckReport r = projection_check(*c.symbol, points, seed, e.value("tol", 1e-12));
      r.name = name;
      return r;
    }
    if (c.kind == "ellipticity") {
      SamplingConfig sc;
      sc.seed = seed;
      sc.directions = e.value("directions", defaults().at("ellipticity").at("directions").get<int>());
      CheckReport r = ellipticity_check(*c.symbol, e.value("C", 1.0), e.value("R", 1.0), sc);
      r.name = name;
      return r;
    }
    if (c.kind == "equivariance") {
      const IsometryAction act = symbol_action(*c.symbol, *c.group);
      SamplingConfig sc;
      sc.seed = seed;
      CheckReport r = equivariance_check(*c.symbol, act, sc, e.value("tol", 1e-10));
      r.name = name;
      return r;
    }
    if (c.kind == "isometry") {
      const IsometryAction act =
          analyze_isometry(c.group->g, Mat::Identity(1, 1), Mat::Identity(1, 1));
      std::ostringstream d;
      d << "n_g=" << act.n_g << " det_normal=" << act.det_normal;
      return make_report(name, true, 0.0, 1, d.str());
    }
    if (c.kind == "epsilon-cocycle") {
      QuadratureConfig q = default_quadrature();
      q.rel_tol = 1e-8;
      q.abs_tol = 1e-11;
      q.max_level = 4;
      if (e.contains("quadrature")) q = QuadratureConfig::from_json(e.at("quadrature"), q);
      return epsilon_cocycle_check(e.value("tuples", verify_defaults.at("tuples").get<int>()), q, rng);
    }
    if (c.kind == "omega-cocycle") {
      return omega_cocycle_check(e.value("tuples", 5), e.value("cutoff", 30), e.value("hbar", 0.5), rng);
    }
  } catch (const Error& err) {
    return make_report(name, false, 1.0, 0,
                       std::string(to_string(err.code())) + ": " + err.what());
  }
  throw Error(ErrorCode::Parse, "unknown check kind '" + c.kind + "'");
}

}  // namespace

CommandOutput verify_manifest(const json& manifest, const std::string& base_dir,
                              std::optional<std::uint64_t> seed_override) {
  try {
    if (!manifest.is_object() || !manifest.contains("checks") || !manifest.at("checks").is_array()) {
      throw Error(ErrorCode::Parse, "verify manifest needs a \"checks\" array");
    }
    const json& vd = defaults().at("verify");
    const std::uint64_t seed =
        seed_override ? *seed_override : manifest.value("seed", vd.at("seed").get<std::uint64_t>());

    // Parse everything up front so a bad file fails before any numerics.
    std::vector<PreparedCheck> prepared;
    for (const auto& entry : manifest.at("checks")) prepared.push_back(prepare(entry, base_dir));

    json report;
    report["seed"] = seed;
    report["checks"] = json::array();
    std::vector<std::string> failed;
    for (std::size_t i = 0; i < prepared.size(); ++i) {
      // Each check gets its own stream so reordering a manifest changes nothing else.
      const CheckReport r = run_check(prepared[i], seed + i, vd);
      report["checks"].push_back(r.to_json());
      if (!r.pass) failed.push_back(r.name);
    }
    report["pass"] = failed.empty();
    report["failed"] = failed;
    report["defaults"] = defaults();

    CommandOutput out;
    out.exit_code = failed.empty() ? kExitOk : kExitProperty;
    out.body = report.dump(2) + "\n";
    if (!failed.empty()) {
      out.message = "failed checks:";
      for (const auto& f : failed) out.message += " " + f;
    }
    return out;
  } catch (const Error& e) {
    return failure(e);
  } catch (const json::exception& e) {
    return failure(Error(ErrorCode::Parse, e.what()));
  }
}

CommandOutput cmd_verify(const RunManifest& m) {
  try {
    m.validate();
    if (m.input.empty()) return verify_manifest(default_manifest(), "", m.seed);
    const json j = read_json_file(m.input);
    return verify_manifest(j, fs::path(m.input).parent_path().string(), m.seed);
  } catch (const Error& e) {
    return failure(e);
  }
}

// ---------------------------------------------------------------- converge

namespace {

LengthRule parse_length(const json& e, LengthRule fallback) {
  if (!e.contains("length")) return fallback;
  const json& l = e.at("length");
  if (l.is_number()) return LengthRule{false, l.get<double>()};
  if (l.is_string()) {
    const auto s = l.get<std::string>();
    if (s == "sqrt-hbar") return LengthRule{true, 1.0};
    throw Error(ErrorCode::Parse, "length must be a number, \"sqrt-hbar\" or an object");
  }
  const std::string rule = l.value("rule", "sqrt-hbar");
  if (rule != "sqrt-hbar" && rule != "fixed") throw Error(ErrorCode::Parse, "unknown length rule " + rule);
  return LengthRule{rule == "sqrt-hbar", l.value("scale", 1.0)};
}

IsometryAction experiment_action(const json& e) {
  const int n = e.at("n").get<int>();
  if (n < 1 || n > 4) throw Error(ErrorCode::Usage, "experiment n must be in 1..4");
  const GroupSpec gs = parse_group_spec(e.value("g", std::string("identity")), n);
  return analyze_isometry(gs.g, Mat::Identity(1, 1), Mat::Identity(1, 1));
}

std::vector<double> real_list(const json& e, const char* key) {
  if (!e.contains(key)) return {};
  return e.at(key).get<std::vector<double>>();
}

}  // namespace

CommandOutput converge_experiment(const json& e) {
  try {
    if (!e.is_object() || !e.contains("kind")) throw Error(ErrorCode::Parse, "experiment needs a \"kind\"");
    const std::string kind = e.at("kind").get<std::string>();
    const std::vector<double> hbar = real_list(e, "hbar");
    const std::vector<int> cutoffs = e.value("N", std::vector<int>{});
    if (hbar.empty()) throw Error(ErrorCode::Usage, "empty hbar schedule");
    if (cutoffs.empty()) throw Error(ErrorCode::Usage, "empty N schedule");
    const Truncation trunc =
        parse_truncation(e.value("truncation", defaults().at("hermite").at("truncation").get<std::string>()));
    const int quad_nodes = e.value("quad_nodes", defaults().at("hermite").at("quad_nodes").get<int>());

    ConvergenceTable table;
    if (kind == "limit") {
      LimitExperiment x;
      x.action = experiment_action(e);
      for (const auto& f : e.at("functions")) x.functions.push_back(TestFunction::from_json(f));
      x.hbar = hbar;
      x.cutoffs = cutoffs;
      x.truncation = trunc;
      x.length = parse_length(e, LengthRule{true, 1.0});
      x.quad_nodes = quad_nodes;
      x.average = e.value("average", true);
      x.target_options.quadrature = default_quadrature();
      if (e.contains("target_quadrature")) {
        x.target_options.quadrature =
            QuadratureConfig::from_json(e.at("target_quadrature"), x.target_options.quadrature);
      }
      if (e.contains("target")) {
        const auto t = e.at("target").get<std::vector<double>>();
        if (t.size() != 2) throw Error(ErrorCode::Parse, "target must be [re, im]");
        x.target = cplx(t[0], t[1]);
      }
      table = semiclassical_limit_experiment(x);
    } else if (kind == "trace-formula") {
      TraceFormulaExperiment x;
      x.action = experiment_action(e);
      x.function = TestFunction::from_json(e.at("function"));
      x.hbar = hbar;
      x.cutoffs = cutoffs;
      x.truncation = trunc;
      x.length = parse_length(e, LengthRule{false, 1.0});
      x.quad_nodes = quad_nodes;
      x.quadrature = default_quadrature();
      if (e.contains("quadrature")) x.quadrature = QuadratureConfig::from_json(e.at("quadrature"), x.quadrature);
      table = trace_formula_experiment(x);
    } else {
      throw Error(ErrorCode::Usage, "unknown experiment kind '" + kind + "'");
    }
    CommandOutput out;
    out.body = "# defaults " + defaults().dump() + "\n" + table.to_csv();
    if (!table.monotone) out.message = "warning: convergence is not monotone";
    return out;
  } catch (const Error& err) {
    return failure(err);
  } catch (const json::exception& err) {
    return failure(Error(ErrorCode::Parse, err.what()));
  }
}

CommandOutput cmd_converge(const RunManifest& m) {
  try {
    m.validate();
    return converge_experiment(read_json_file(m.input));
  } catch (const Error& e) {
    return failure(e);
  }
}

CommandOutput run(const RunManifest& m) {
  if (m.command == "index") return cmd_index(m);
  if (m.command == "verify") return cmd_verify(m);
  if (m.command == "converge") return cmd_converge(m);
  return failure(Error(ErrorCode::Usage, "unknown command '" + m.command + "'"));
}

}  // namespace equivix::cli
