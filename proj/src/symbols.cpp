#include "equivix/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <random>

#include "equivix/clifford.hpp"
#include "equivix/error.hpp"
#include "equivix/linalg.hpp"

namespace equivix {

Mat SymbolField::operator()(const Vec& z) const {
  if (z.size() != phase_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "symbol " + name + ": phase point must have length " +
                    std::to_string(phase_dim()));
  }
  return eval(z);
}

SymbolField bott_dirac_symbol(int n_half) {
  const auto alg = std::make_shared<const CliffordAlgebra>(n_half);
  const int n = alg->generators();
  const int half = alg->even_dim();
  // a = sum_j x_j A_x[j] + xi_j A_xi[j], the odd <- even block of
  // sum_j chat(e_j) i xi_j + c(e_j) x_j.
  auto ax = std::make_shared<std::vector<Mat>>();
  auto axi = std::make_shared<std::vector<Mat>>();
  for (int j = 1; j <= n; ++j) {
    ax->push_back(alg->left_mult(j).block(half, 0, half, half));
    axi->push_back(kI * alg->twisted_right_mult(j).block(half, 0, half, half));
  }
  SymbolField s;
  s.n = n;
  s.dim_v = half;
  s.dim_w = half;
  s.order = 1.0;
  s.name = "bott-dirac:" + std::to_string(n_half);
  s.eval = [ax, axi, n, half](const Vec& z) {
    Mat a = Mat::Zero(half, half);
    for (int j = 0; j < n; ++j) a += z(j) * (*ax)[j] + z(n + j) * (*axi)[j];
    return a;
  };
  s.deriv = [ax, axi, n](const Vec&, int k) -> Mat {
    if (k < 0 || k >= 2 * n) {
      throw Error(ErrorCode::IndexOutOfRange, "bott-dirac: coordinate out of range");
    }
    return k < n ? (*ax)[k] : (*axi)[k - n];
  };
  s.fiber_action = [alg, half](const RMat& g) {
    const Mat full = alg->so_action(g);
    return std::make_pair(Mat(full.topLeftCorner(half, half)),
                          Mat(full.bottomRightCorner(half, half)));
  };
  return s;
}

namespace {

struct PolyTerm {
  cplx coeff;
  std::vector<int> powers;  // length 2n: x powers then xi powers
};

struct PolyEntry {
  int row = 0;
  int col = 0;
  std::vector<PolyTerm> terms;
};

cplx parse_complex(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::Parse, "symbol file: coefficient must be a number or [re, im]");
}

std::vector<int> parse_powers(const nlohmann::json& t, const char* key, int n) {
  std::vector<int> p(n, 0);
  if (!t.contains(key)) return p;
  const auto& arr = t.at(key);
  if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
    throw Error(ErrorCode::Parse, std::string("symbol file: '") + key +
                                      "' must list n exponents");
  }
  for (int k = 0; k < n; ++k) {
    p[k] = arr[k].get<int>();
    if (p[k] < 0) throw Error(ErrorCode::Parse, "symbol file: negative exponent");
  }
  return p;
}

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

SymbolField polynomial_symbol(const nlohmann::json& spec) {
  SymbolField s;
  try {
    s.n = spec.at("n").get<int>();
    s.dim_v = spec.at("dimV").get<int>();
    s.dim_w = spec.at("dimW").get<int>();
    s.order = spec.at("order").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("symbol file: ") + e.what());
  }
  if (s.n < 1 || s.dim_v < 1 || s.dim_w < 1) {
    throw Error(ErrorCode::InvalidDimension, "symbol file: dimensions must be positive");
  }
  s.name = spec.value("name", std::string("polynomial"));
  auto entries = std::make_shared<std::vector<PolyEntry>>();
  for (const auto& e : spec.at("entries")) {
    PolyEntry pe;
    pe.row = e.at("row").get<int>();
    pe.col = e.at("col").get<int>();
    if (pe.row < 0 || pe.row >= s.dim_w || pe.col < 0 || pe.col >= s.dim_v) {
      throw Error(ErrorCode::IndexOutOfRange, "symbol file: entry outside dimW x dimV");
    }
    for (const auto& t : e.at("terms")) {
      PolyTerm term;
      term.coeff = parse_complex(t.at("coeff"));
      const auto px = parse_powers(t, "x", s.n);
      const auto pxi = parse_powers(t, "xi", s.n);
      term.powers = px;
      term.powers.insert(term.powers.end(), pxi.begin(), pxi.end());
      pe.terms.push_back(std::move(term));
    }
    entries->push_back(std::move(pe));
  }
  const int rows = s.dim_w;
  const int cols = s.dim_v;
  s.eval = [entries, rows, cols](const Vec& z) {
    Mat a = Mat::Zero(rows, cols);
    for (const auto& e : *entries) {
      for (const auto& t : e.terms) {
        double mono = 1.0;
        for (std::size_t k = 0; k < t.powers.size(); ++k) mono *= int_pow(z(k), t.powers[k]);
        a(e.row, e.col) += t.coeff * mono;
      }
    }
    return a;
  };
  s.deriv = [entries, rows, cols](const Vec& z, int d) {
    Mat a = Mat::Zero(rows, cols);
    for (const auto& e : *entries) {
      for (const auto& t : e.terms) {
        if (t.powers[d] == 0) continue;
        double mono = t.powers[d];
        for (std::size_t k = 0; k < t.powers.size(); ++k) {
          const int p = static_cast<int>(k) == d ? t.powers[k] - 1 : t.powers[k];
          mono *= int_pow(z(k), p);
        }
        a(e.row, e.col) += t.coeff * mono;
      }
    }
    return a;
  };
  return s;
}

SymbolField load_symbol_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open symbol file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, "symbol file " + path + ": " + e.what());
  }
  return polynomial_symbol(j);
}

SymbolField parse_symbol_spec(const std::string& text) {
  const std::string prefix = "bott-dirac:";
  if (text.rfind(prefix, 0) == 0) {
    int n_half = 0;
    try {
      std::size_t used = 0;
      n_half = std::stoi(text.substr(prefix.size()), &used);
      if (used != text.size() - prefix.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "bad symbol spec '" + text + "'");
    }
    return bott_dirac_symbol(n_half);
  }
  return load_symbol_file(text);
}

Mat symbol_directional_fd(const SymbolField& a, const Vec& z, const Vec& v) {
  const double h = 1e-3 * (1.0 + z.norm());
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::NumericFailure, "finite difference step underflow");
  }
  return (a(z - 2 * h * v) - 8.0 * a(z - h * v) + 8.0 * a(z + h * v) - a(z + 2 * h * v)) /
         (12.0 * h);
}

Mat symbol_directional(const SymbolField& a, const Vec& z, const Vec& v,
                       DerivativeMode mode) {
  const bool exact = mode == DerivativeMode::Exact ||
                     (mode == DerivativeMode::Auto && a.has_exact_derivative());
  if (!exact) return symbol_directional_fd(a, z, v);
  if (!a.has_exact_derivative()) {
    throw Error(ErrorCode::Precondition, "symbol " + a.name + " has no derivative oracle");
  }
  Mat out = Mat::Zero(a.dim_w, a.dim_v);
  for (int k = 0; k < v.size(); ++k) {
    if (v(k) != 0.0) out += v(k) * a.deriv(z, k);
  }
  return out;
}

Jet graph_projection_jet(const SymbolField& a, const Vec& z,
                         const std::vector<Vec>& dirs, DerivativeMode mode) {
  const int dv = a.dim_v;
  const int dw = a.dim_w;
  const Mat av = a(z);
  const Mat adj = av.adjoint();
  const Mat m = Mat::Identity(dv, dv) + adj * av;
  const Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericFailure, "graph projection: 1 + a*a not positive definite");
  }
  Mat b(dv, dv + dw);
  b << Mat::Identity(dv, dv), adj;
  const Mat x = llt.solve(b);
  const Mat ax = av * x;
  Jet out;
  out.value.resize(dv + dw, dv + dw);
  out.value << x, ax;
  out.partials.reserve(dirs.size());
  for (const Vec& v : dirs) {
    const Mat da = symbol_directional(a, z, v, mode);
    const Mat dadj = da.adjoint();
    const Mat dm = dadj * av + adj * da;
    Mat db = Mat::Zero(dv, dv + dw);
    db.rightCols(dw) = dadj;
    const Mat dx = llt.solve(db - dm * x);
    Mat d(dv + dw, dv + dw);
    d << dx, da * x + av * dx;
    out.partials.push_back(std::move(d));
  }
  return out;
}

Mat reference_projection(const SymbolField& a) {
  Mat p = Mat::Zero(a.dim_v + a.dim_w, a.dim_v + a.dim_w);
  p.bottomRightCorner(a.dim_w, a.dim_w).setIdentity();
  return p;
}

Jet hat_projection_jet(const SymbolField& a, const Vec& z,
                       const std::vector<Vec>& dirs, DerivativeMode mode) {
  Jet j = graph_projection_jet(a, z, dirs, mode);
  j.value.bottomRightCorner(a.dim_w, a.dim_w) -= Mat::Identity(a.dim_w, a.dim_w);
  return j;
}

PointMatrix graph_projection(const SymbolField& a, const Vec& z) {
  return {graph_projection_jet(a, z, {}).value, z, MatrixRole::GraphProjection};
}

PointMatrix hat_projection(const SymbolField& a, const Vec& z) {
  return {hat_projection_jet(a, z, {}).value, z, MatrixRole::HatProjection};
}

MatrixField graph_projection_field(const SymbolField& a, DerivativeMode mode) {
  MatrixField f;
  f.phase_dim = a.phase_dim();
  f.size = a.dim_v + a.dim_w;
  f.name = "e[" + a.name + "]";
  f.jet = [a, mode](const Vec& z, const std::vector<Vec>& dirs) {
    return graph_projection_jet(a, z, dirs, mode);
  };
  return f;
}

MatrixField hat_projection_field(const SymbolField& a, DerivativeMode mode) {
  MatrixField f;
  f.phase_dim = a.phase_dim();
  f.size = a.dim_v + a.dim_w;
  f.name = "ehat[" + a.name + "]";
  f.jet = [a, mode](const Vec& z, const std::vector<Vec>& dirs) {
    return hat_projection_jet(a, z, dirs, mode);
  };
  return f;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j = {{"check", name},
                      {"pass", pass},
                      {"worst_margin", worst_margin},
                      {"samples", samples}};
  if (worst_point.size() > 0) {
    j["worst_point"] = std::vector<double>(worst_point.data(),
                                           worst_point.data() + worst_point.size());
  }
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

namespace {

// Unit directions: coordinate axes (both signs) followed by random ones.
std::vector<Vec> sample_directions(int dim, int random_count, std::uint64_t seed) {
  std::vector<Vec> dirs;
  for (int k = 0; k < dim; ++k) {
    dirs.push_back(Vec::Unit(dim, k));
    dirs.push_back(-Vec::Unit(dim, k));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < random_count; ++i) {
    Vec v(dim);
    for (int k = 0; k < dim; ++k) v(k) = normal(rng);
    const double len = v.norm();
    if (len > 0.0) dirs.push_back(v / len);
  }
  return dirs;
}

std::vector<Vec> sample_points(int dim, int count, double spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, spread);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec v(dim);
    for (int k = 0; k < dim; ++k) v(k) = normal(rng);
    pts.push_back(v);
  }
  return pts;
}

}  // namespace

CheckReport ellipticity_check(const SymbolField& a, double C, double R,
                              const SamplingConfig& samples) {
  if (a.dim_v != a.dim_w) {
    throw Error(ErrorCode::UnsupportedShape,
                "ellipticity: symbol must be square (dimV = dimW)");
  }
  if (!(C > 0.0) || !(R > 0.0)) {
    throw Error(ErrorCode::Precondition, "ellipticity: C and R must be positive");
  }
  std::vector<double> radii = samples.radii;
  if (radii.empty()) {
    const double r0 = std::sqrt(R);
    for (double f : {1.0, 1.5, 3.0, 10.0, 100.0, 1000.0}) radii.push_back(r0 * f);
  }
  CheckReport rep;
  rep.name = "ellipticity";
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    if (r * r < R) continue;
    for (const Vec& d : sample_directions(a.phase_dim(), samples.directions, samples.seed)) {
      const Vec z = r * d;
      const Mat av = a(z);
      const Eigen::SelfAdjointEigenSolver<Mat> es(av.adjoint() * av, Eigen::EigenvaluesOnly);
      const double bound = C * std::pow(r, 2.0 * a.order);
      const double margin = (es.eigenvalues()(0) - bound) / bound;
      ++rep.samples;
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_point = z;
      }
    }
  }
  if (rep.samples == 0) {
    throw Error(ErrorCode::Precondition, "ellipticity: no sample radius satisfies |z|^2 >= R");
  }
  rep.pass = rep.worst_margin >= -samples.tolerance;
  rep.detail = "relative margin (min eig(a*a) - C|z|^{2m}) / C|z|^{2m}";
  return rep;
}

CheckReport equivariance_check(const SymbolField& a, const IsometryAction& g,
                               const SamplingConfig& samples, double tol) {
  if (g.n() != a.n) {
    throw Error(ErrorCode::DimensionMismatch, "equivariance: g acts on the wrong dimension");
  }
  if (g.rep_v.rows() != a.dim_v || g.rep_w.rows() != a.dim_w) {
    throw Error(ErrorCode::DimensionMismatch, "equivariance: reps do not match fiber dimensions");
  }
  CheckReport rep;
  rep.name = "equivariance";
  const Mat inv_v = g.rep_v.adjoint();
  const int count = std::max(8, samples.directions);
  for (const Vec& z : sample_points(a.phase_dim(), count, 2.0, samples.seed)) {
    const Mat lhs = g.rep_w * a(phase_space_pullback(g, z)) * inv_v;
    const Mat rhs = a(z);
    const double err = (lhs - rhs).norm() / std::max(1.0, rhs.norm());
    ++rep.samples;
    if (err > rep.worst_margin || rep.worst_point.size() == 0) {
      rep.worst_margin = std::max(rep.worst_margin, err);
      rep.worst_point = z;
    }
  }
  rep.pass = rep.worst_margin <= tol;
  rep.detail = "max ||g^W a(g^-1 z) (g^V)^-1 - a(z)|| / max(1, ||a(z)||)";
  return rep;
}

CheckReport order_growth_check(const SymbolField& a, double bound,
                               const SamplingConfig& samples) {
  CheckReport rep;
  rep.name = "order-growth";
  std::vector<double> radii = samples.radii;
  if (radii.empty()) radii = {1.0, 10.0, 100.0, 1000.0};
  for (double r : radii) {
    if (r < 1.0) continue;
    for (const Vec& d : sample_directions(a.phase_dim(), samples.directions, samples.seed)) {
      const Vec z = r * d;
      const Eigen::JacobiSVD<Mat> svd(a(z));
      const double ratio = svd.singularValues()(0) / std::pow(r, a.order);
      ++rep.samples;
      if (ratio > rep.worst_margin || rep.worst_point.size() == 0) {
        rep.worst_margin = std::max(rep.worst_margin, ratio);
        rep.worst_point = z;
      }
    }
  }
  rep.pass = rep.worst_margin <= bound;
  rep.detail = "max ||a(z)|| / |z|^m over |z| >= 1";
  return rep;
}

CheckReport projection_check(const SymbolField& a, int points, std::uint64_t seed,
                             double tol) {
  CheckReport rep;
  rep.name = "graph-projection";
  for (const Vec& z : sample_points(a.phase_dim(), points, 3.0, seed)) {
    const Mat p = graph_projection(a, z).m;
    const double idem = (p * p - p).cwiseAbs().maxCoeff();
    const double herm = (p - p.adjoint()).cwiseAbs().maxCoeff();
    const double err = std::max(idem, herm);
    ++rep.samples;
    if (err > rep.worst_margin || rep.worst_point.size() == 0) {
      rep.worst_margin = std::max(rep.worst_margin, err);
      rep.worst_point = z;
    }
  }
  rep.pass = rep.worst_margin <= tol;
  rep.detail = "max(|P^2 - P|, |P - P*|) entrywise";
  return rep;
}

IsometryAction symbol_action(const SymbolField& a, const GroupSpec& g,
                             IsometryOptions opts) {
  if (g.g.rows() != a.n) {
    throw Error(ErrorCode::DimensionMismatch, "group element dimension does not match symbol");
  }
  if (!is_orthogonal(g.g, opts.orthogonal_tol)) {
    throw Error(ErrorCode::Precondition, "isometry: g is not orthogonal");
  }
  Mat rv = Mat::Identity(a.dim_v, a.dim_v);
  Mat rw = Mat::Identity(a.dim_w, a.dim_w);
  if (a.fiber_action) std::tie(rv, rw) = a.fiber_action(g.g);
  IsometryAction act = analyze_isometry(g.g, rv, rw, opts);
  act.description = g.description;
  return act;
}

}  // namespace equivix
