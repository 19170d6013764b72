#include "equivix/deformation.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "equivix/alternating.hpp"
#include "equivix/error.hpp"
#include "equivix/linalg.hpp"

namespace equivix {

BasisPtr make_basis(const HermiteBasisConfig& cfg) {
  return std::make_shared<const HermiteBasis>(cfg);
}

namespace {

// Effective edge of the basis: psi_k^l is negligible beyond this radius.
double basis_radius(int cutoff, double length) {
  return length * (std::sqrt(2.0 * cutoff + 1.0) + 8.0);
}

int auto_nodes(double wavenumber, double width) {
  return static_cast<int>(std::ceil(0.6 * wavenumber * width)) + 40;
}

struct Box {
  double lo;
  double hi;
  bool empty() const { return !(hi > lo); }
  double width() const { return hi - lo; }
};

// M = (2 pi)^{-1} Psi(x) diag(w_a) C with C(a, j) = sum_b w_b F(x_a, y_b) psi_j(x_a + hbar y_b).
template <class F>
Mat assemble_1d(const F& fhat, const Box& xb, const Box& yb, int qx, int qy, double hbar,
                int cutoff, double length) {
  const GaussRule rx = gauss_legendre(qx, xb.lo, xb.hi);
  const GaussRule ry = gauss_legendre(qy, yb.lo, yb.hi);
  const Eigen::Map<const Vec> xs(rx.nodes.data(), qx);
  const RMat psi_x = hermite_functions(cutoff, xs, length);
  RMat c_re = RMat::Zero(qx, cutoff);
  RMat c_im = RMat::Zero(qx, cutoff);
  Vec shifted(qx);
  Vec v_re(qx);
  Vec v_im(qx);
  for (int b = 0; b < qy; ++b) {
    const double y = ry.nodes[b];
    for (int a = 0; a < qx; ++a) {
      const cplx v = ry.weights[b] * fhat(rx.nodes[a], y);
      v_re(a) = v.real();
      v_im(a) = v.imag();
      shifted(a) = rx.nodes[a] + hbar * y;
    }
    const RMat psi_s = hermite_functions(cutoff, shifted, length);
    c_re.noalias() += v_re.asDiagonal() * psi_s.transpose();
    c_im.noalias() += v_im.asDiagonal() * psi_s.transpose();
  }
  const Eigen::Map<const Vec> wx(rx.weights.data(), qx);
  const RMat left = psi_x * wx.asDiagonal();
  Mat out(cutoff, cutoff);
  out.real() = left * c_re;
  out.imag() = left * c_im;
  return out / (2.0 * kPi);
}

void check_hbar(double hbar) {
  if (!(hbar > 0.0)) throw Error(ErrorCode::Precondition, "rho_hbar: hbar must be > 0");
}

}  // namespace

Mat rho_hbar_1d(const Factor1D& f, double hbar, int cutoff, double length, int quad_nodes) {
  check_hbar(hbar);
  const double edge = basis_radius(cutoff, length);
  const double c = f.x_center();
  const double hx = f.x_half_width();
  const Box xb{std::max(c - hx, -edge), std::min(c + hx, edge)};
  if (xb.empty()) return Mat::Zero(cutoff, cutoff);
  const double hy = f.y_half_width();
  const Box yb{-hy, hy};
  const double kbasis = std::sqrt(2.0 * cutoff + 1.0) / length;
  const int qx = quad_nodes > 0 ? quad_nodes
                                : auto_nodes(2.0 * kbasis + std::abs(f.b) + std::sqrt(f.alpha * 40.0),
                                             xb.width());
  const int qy = quad_nodes > 0
                     ? quad_nodes
                     : auto_nodes(hbar * kbasis + std::abs(f.d) / (2.0 * f.beta) +
                                      std::sqrt(40.0 / f.beta),
                                  yb.width());
  return assemble_1d(
      [&f](double x, double y) { return f.x_part(x) * f.xi_transform(y); }, xb, yb, qx, qy,
      hbar, cutoff, length);
}

DeformedOperator rho_hbar(const TestFunction& f, double hbar, const BasisPtr& basis) {
  check_hbar(hbar);
  if (f.n() != basis->n()) {
    throw Error(ErrorCode::DimensionMismatch, "rho_hbar: test function and basis dimensions differ");
  }
  const int N = basis->cutoff();
  Mat total = Mat::Zero(basis->dim(), basis->dim());
  for (const auto& term : f.terms()) {
    std::vector<Mat> blocks;
    for (const auto& fac : term.factors) {
      blocks.push_back(rho_hbar_1d(fac, hbar, N, basis->length(), basis->config().quad_nodes));
    }
    total += term.coeff * basis->lift(blocks);
  }
  return {std::move(total), hbar, basis};
}

DeformedOperator rho_hbar(const TransformField& f, double hbar, const BasisPtr& basis) {
  check_hbar(hbar);
  if (f.n != 1 || basis->n() != 1) {
    throw Error(ErrorCode::UnsupportedShape,
                "rho_hbar: evaluator transforms are supported for n = 1 only");
  }
  const int N = basis->cutoff();
  const double edge = basis_radius(N, basis->length());
  const Box xb{std::max(f.x_center - f.x_half_width, -edge),
               std::min(f.x_center + f.x_half_width, edge)};
  if (xb.empty()) return {Mat::Zero(N, N), hbar, basis};
  const Box yb{-f.y_half_width, f.y_half_width};
  const double kbasis = std::sqrt(2.0 * N + 1.0) / basis->length();
  const int given = basis->config().quad_nodes;
  const int qx = given > 0 ? given : auto_nodes(2.0 * kbasis + 4.0, xb.width());
  const int qy = given > 0 ? given : auto_nodes(hbar * kbasis + 4.0, yb.width());
  Vec x1(1);
  Vec y1(1);
  Mat m = assemble_1d(
      [&](double x, double y) {
        x1(0) = x;
        y1(0) = y;
        return f.eval(x1, y1);
      },
      xb, yb, qx, qy, hbar, N, basis->length());
  return {std::move(m), hbar, basis};
}

TransformField star_H(const TransformField& f1, const TransformField& f2, double hbar, int nodes) {
  if (f1.n != 1 || f2.n != 1) {
    throw Error(ErrorCode::UnsupportedShape, "star_H: evaluator transforms need n = 1");
  }
  if (hbar < 0.0) throw Error(ErrorCode::Precondition, "star_H: hbar must be >= 0");
  const int q = nodes > 0 ? nodes : 96;
  // z ranges over the support of f1(x, .); f2(., y - z) restricts it further.
  const GaussRule rule = gauss_legendre(q, -f1.y_half_width, f1.y_half_width);
  TransformField out;
  out.n = 1;
  out.x_center = f1.x_center;
  out.x_half_width = f1.x_half_width;
  out.y_half_width = f1.y_half_width + f2.y_half_width;
  out.eval = [f1, f2, hbar, rule](const Vec& x, const Vec& y) {
    Vec z(1);
    Vec x2(1);
    Vec y2(1);
    cplx total{0.0, 0.0};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      z(0) = rule.nodes[k];
      x2(0) = x(0) + hbar * z(0);
      y2(0) = y(0) - z(0);
      if (std::abs(y2(0)) > f2.y_half_width) continue;
      total += rule.weights[k] * f1.eval(x, z) * f2.eval(x2, y2);
    }
    return total / (2.0 * kPi);
  };
  return out;
}

TransformField star_H(const TestFunction& f1, const TestFunction& f2, double hbar, int nodes) {
  if (hbar == 0.0) return transform_field(f1 * f2);
  return star_H(transform_field(f1), transform_field(f2), hbar, nodes);
}

namespace {

Mat sparse_commutator(const SparseR& s, const Mat& t) {
  const Eigen::SparseMatrix<cplx> sc = s.cast<cplx>();
  Mat out = sc * t;
  out -= t * sc;
  return out;
}

void check_same_basis(const std::vector<DeformedOperator>& ts) {
  for (const auto& t : ts) {
    if (!t.basis || t.basis->dim() != ts.front().basis->dim() ||
        t.basis->n() != ts.front().basis->n() || t.hbar != ts.front().hbar) {
      throw Error(ErrorCode::DimensionMismatch, "operators must share basis and hbar");
    }
  }
}

}  // namespace

DeformedOperator derivation_delta(int j, const DeformedOperator& t) {
  const int n = t.basis->n();
  if (j < 1 || j > 2 * n) {
    throw Error(ErrorCode::IndexOutOfRange, "derivation_delta: j must be in 1..2n");
  }
  const int coord = (j - 1) / 2;
  const SparseR& s = (j % 2 == 1) ? t.basis->ladder_dx(coord) : t.basis->ladder_x(coord);
  return {sparse_commutator(s, t.matrix), t.hbar, t.basis};
}

Mat derivation_along(const HermiteBasis& basis, const Vec& v, bool momentum, const Mat& t) {
  Mat out = Mat::Zero(t.rows(), t.cols());
  for (int d = 0; d < basis.n(); ++d) {
    if (v(d) == 0.0) continue;
    const SparseR& s = momentum ? basis.ladder_x(d) : basis.ladder_dx(d);
    out += v(d) * sparse_commutator(s, t);
  }
  return out;
}

RMat orthogonal_log(const RMat& g) {
  const int n = static_cast<int>(g.rows());
  if (!is_orthogonal(g, 1e-10) || std::abs(g.determinant() - 1.0) > 1e-8) {
    throw Error(ErrorCode::Precondition, "orthogonal_log: g must lie in SO(n)");
  }
  const Eigen::RealSchur<RMat> schur(g);
  const RMat& t = schur.matrixT();
  const RMat& u = schur.matrixU();
  RMat l = RMat::Zero(n, n);
  std::vector<int> minus_one;
  for (int i = 0; i < n;) {
    if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-14) {
      const double theta = std::atan2(t(i + 1, i), t(i, i));
      l(i + 1, i) = theta;
      l(i, i + 1) = -theta;
      i += 2;
    } else {
      if (t(i, i) < 0.0) minus_one.push_back(i);
      ++i;
    }
  }
  if (minus_one.size() % 2 != 0) {
    throw Error(ErrorCode::NumericFailure, "orthogonal_log: odd number of -1 eigenvalues");
  }
  for (std::size_t k = 0; k < minus_one.size(); k += 2) {
    l(minus_one[k + 1], minus_one[k]) = kPi;
    l(minus_one[k], minus_one[k + 1]) = -kPi;
  }
  RMat x = u * l * u.transpose();
  return 0.5 * (x - x.transpose());
}

Mat group_rep_matrix(const RMat& g, const HermiteBasis& basis) {
  const int n = basis.n();
  if (g.rows() != n || g.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "group_rep_matrix: g acts on the wrong dimension");
  }
  const int dim = basis.dim();
  if ((g - RMat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-15) {
    return Mat::Identity(dim, dim);
  }
  const RMat x = orthogonal_log(g);
  Mat out = Mat::Zero(dim, dim);
  const int top = basis.max_level();
  for (int level = 0; level <= top; ++level) {
    // Every multi-index of this level, kept or not, so the block is exact.
    std::vector<std::vector<int>> states;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int d, int remaining) {
      if (d == n - 1) {
        cur[d] = remaining;
        states.push_back(cur);
        return;
      }
      for (int v = remaining; v >= 0; --v) {
        cur[d] = v;
        rec(d + 1, remaining - v);
      }
    };
    rec(0, level);
    std::map<std::vector<int>, int> pos;
    for (std::size_t s = 0; s < states.size(); ++s) pos[states[s]] = static_cast<int>(s);
    const int m = static_cast<int>(states.size());
    Mat k = Mat::Zero(m, m);
    for (int col = 0; col < m; ++col) {
      const auto& st = states[col];
      for (int a = 0; a < n; ++a) {      // creation index j
        for (int b = 0; b < n; ++b) {    // annihilation index k
          if (x(a, b) == 0.0 || st[b] == 0) continue;
          std::vector<int> target = st;
          --target[b];
          const double amp = std::sqrt(static_cast<double>(st[b])) *
                             std::sqrt(static_cast<double>(target[a] + 1));
          ++target[a];
          k(pos.at(target), col) += x(a, b) * amp;
        }
      }
    }
    const Mat u = k.exp();
    std::vector<int> kept_local;
    std::vector<int> kept_global;
    for (int s = 0; s < m; ++s) {
      const int gi = basis.index_of(states[s]);
      if (gi >= 0) {
        kept_local.push_back(s);
        kept_global.push_back(gi);
      }
    }
    for (std::size_t c = 0; c < kept_local.size(); ++c) {
      for (std::size_t r = 0; r < kept_local.size(); ++r) {
        out(kept_global[r], kept_global[c]) = u(kept_local[r], kept_local[c]);
      }
    }
  }
  return out;
}

Mat group_rep_matrix(const IsometryAction& a, const HermiteBasis& basis) {
  return group_rep_matrix(a.g, basis);
}

Mat g_average(const Mat& t, const Mat& ghat, double cluster_tol) {
  const int dim = static_cast<int>(ghat.rows());
  const Mat id = Mat::Identity(dim, dim);
  if (is_unitary(ghat, 1e-10)) {
    Mat power = ghat;
    for (int order = 1; order <= 64; ++order) {
      if ((power - id).cwiseAbs().maxCoeff() < 1e-9) {
        Mat acc = t;
        Mat p = ghat;
        for (int k = 1; k < order; ++k) {
          acc += p * t * p.adjoint();
          p = p * ghat;
        }
        return acc / static_cast<double>(order);
      }
      power = power * ghat;
    }
  }
  const Eigen::ComplexSchur<Mat> schur(ghat);
  const Mat& u = schur.matrixU();
  const auto lambda = schur.matrixT().diagonal();
  Mat inner = u.adjoint() * t * u;
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      if (std::abs(lambda(i) - lambda(j)) > cluster_tol) inner(i, j) = 0.0;
    }
  }
  return u * inner * u.adjoint();
}

cplx omega_g(const IsometryAction& a, const Mat& ghat, const std::vector<DeformedOperator>& ts) {
  const int slots = 2 * a.n_g + 1;
  if (static_cast<int>(ts.size()) != slots) {
    throw Error(ErrorCode::DimensionMismatch,
                "omega_g: needs 2 n_g + 1 = " + std::to_string(slots) + " operators");
  }
  check_same_basis(ts);
  const HermiteBasis& basis = *ts.front().basis;
  if (basis.n() != a.n()) {
    throw Error(ErrorCode::DimensionMismatch, "omega_g: basis dimension differs from g");
  }
  if (ghat.size() != 0 && ghat.rows() != basis.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "omega_g: ghat has the wrong size");
  }
  if (a.n_g == 0) {
    return ghat.size() == 0 ? ts[0].matrix.trace() : trace_of_product(ghat, ts[0].matrix);
  }
  const Mat left = ghat.size() == 0 ? ts[0].matrix : Mat(ghat * ts[0].matrix);
  std::vector<std::vector<Mat>> factors;
  for (int s = 1; s < slots; ++s) {
    std::vector<Mat> per_dir;
    for (int j = 0; j < a.n_g; ++j) {
      const Vec v = a.q.col(j);
      per_dir.push_back(derivation_along(basis, v, false, ts[s].matrix));
      per_dir.push_back(derivation_along(basis, v, true, ts[s].matrix));
    }
    factors.push_back(std::move(per_dir));
  }
  double fact = 1.0;
  for (int i = 2; i <= a.n_g; ++i) fact *= i;
  const double sign = (a.n_g % 2 == 0) ? 1.0 : -1.0;
  return sign / fact * alternating_trace(left, factors);
}

TraceFormulaValue equivariant_trace_formula(const TestFunction& f, double hbar,
                                            const IsometryAction& a, const BasisPtr& basis,
                                            const QuadratureConfig& q, const Mat& ghat_in) {
  check_hbar(hbar);
  const int n = f.n();
  if (a.n() != n) throw Error(ErrorCode::DimensionMismatch, "trace formula: g dimension");
  const Mat ghat = ghat_in.size() == 0 ? group_rep_matrix(a, *basis) : ghat_in;
  const DeformedOperator rho = rho_hbar(f, hbar, basis);
  TraceFormulaValue out;
  out.lhs = trace_of_product(rho.matrix, ghat);
  const RMat shift = a.g - RMat::Identity(n, n);
  const Integrand integrand = [&](const Vec& x) {
    return f.transform(x, shift * x / hbar);
  };
  const QuadratureResult r = integrate(n, integrand, q);
  const double pre = 1.0 / std::pow(2.0 * kPi * hbar, n);
  out.rhs = pre * r.value;
  out.rhs_error = pre * r.error_estimate;
  return out;
}

double LengthRule::operator()(double hbar) const {
  return sqrt_hbar ? scale * std::sqrt(hbar) : scale;
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream out;
  out << "hbar,N,lhs_re,lhs_im,target_re,target_im,abs_err,rel_err,seconds,warning\n";
  out << std::setprecision(12);
  for (const auto& r : rows) {
    // Adding 0.0 turns -0 into 0 so equal runs print identically.
    out << r.hbar << ',' << r.cutoff << ',' << r.lhs.real() + 0.0 << ',' << r.lhs.imag() + 0.0
        << ',' << r.target.real() + 0.0 << ',' << r.target.imag() + 0.0 << ',' << r.abs_err << ',' << r.rel_err
        << ',' << std::setprecision(4) << r.seconds << std::setprecision(12) << ','
        << r.warning << '\n';
  }
  return out.str();
}

namespace {

// ||(g T - T g) V|| / ||T g V|| for a few fixed random probes V; avoids two
// dense products of basis-sized matrices.
double commutation_defect(const Mat& ghat, const Mat& t) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat probes(t.cols(), 4);
  for (Eigen::Index j = 0; j < probes.cols(); ++j) {
    for (Eigen::Index i = 0; i < probes.rows(); ++i) probes(i, j) = cplx(normal(rng), normal(rng));
  }
  const Mat gv = ghat * probes;
  const Mat lhs = ghat * (t * probes);
  const Mat rhs = t * gv;
  const double ref = rhs.norm();
  return ref > 0.0 ? (lhs - rhs).norm() / ref : (lhs - rhs).norm();
}

void finish_table(ConvergenceTable& table) {
  table.monotone = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].abs_err < table.rows[i - 1].abs_err)) {
      table.monotone = false;
      auto& w = table.rows[i].warning;
      w = w.empty() ? "non-monotone" : w + ";non-monotone";
    }
  }
}

void fill_errors(ConvergenceRow& row) {
  row.abs_err = std::abs(row.lhs - row.target);
  const double scale = std::abs(row.target);
  row.rel_err = scale > 0.0 ? row.abs_err / scale : row.abs_err;
}

void check_schedule(const std::vector<double>& hbar, const std::vector<int>& cutoffs,
                    bool allow_single_hbar) {
  if (cutoffs.empty() || hbar.empty()) {
    throw Error(ErrorCode::Usage, "experiment: empty hbar or N schedule");
  }
  if (hbar.size() != cutoffs.size() && !(allow_single_hbar && hbar.size() == 1)) {
    throw Error(ErrorCode::Usage, "experiment: hbar and N schedules differ in length");
  }
  for (double h : hbar) {
    if (!(h > 0.0) || h > 1.0) throw Error(ErrorCode::Usage, "experiment: hbar must lie in (0, 1]");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ConvergenceTable semiclassical_limit_experiment(const LimitExperiment& e) {
  check_schedule(e.hbar, e.cutoffs, false);
  for (std::size_t i = 1; i < e.hbar.size(); ++i) {
    if (!(e.hbar[i] < e.hbar[i - 1])) {
      throw Error(ErrorCode::Usage, "limit experiment: hbar schedule must decrease");
    }
  }
  const int n = e.action.n();
  if (static_cast<int>(e.functions.size()) != 2 * e.action.n_g + 1) {
    throw Error(ErrorCode::Usage, "limit experiment: needs 2 n_g + 1 test functions");
  }
  for (const auto& f : e.functions) {
    if (f.n() != n) throw Error(ErrorCode::DimensionMismatch, "limit experiment: function dimension");
  }
  ConvergenceTable table;
  table.kind = "limit";
  cplx target{0.0, 0.0};
  if (e.target) {
    target = *e.target;
  } else {
    std::vector<MatrixField> fields;
    for (const auto& f : e.functions) fields.push_back(f.field());
    target = epsilon_cocycle(e.action, Mat::Identity(1, 1), fields, e.target_options).value;
  }
  const bool trivial_g = (e.action.g - RMat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-15;
  for (std::size_t i = 0; i < e.hbar.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    HermiteBasisConfig cfg;
    cfg.n = n;
    cfg.cutoff = e.cutoffs[i];
    cfg.length = e.length(e.hbar[i]);
    cfg.truncation = e.truncation;
    cfg.quad_nodes = e.quad_nodes;
    const BasisPtr basis = make_basis(cfg);
    const Mat ghat = trivial_g ? Mat() : group_rep_matrix(e.action, *basis);
    ConvergenceRow row;
    row.hbar = e.hbar[i];
    row.cutoff = e.cutoffs[i];
    std::vector<DeformedOperator> ops;
    double worst_defect = 0.0;
    for (const auto& f : e.functions) {
      DeformedOperator op = rho_hbar(f, e.hbar[i], basis);
      if (!trivial_g) {
        const double defect = commutation_defect(ghat, op.matrix);
        worst_defect = std::max(worst_defect, defect);
        if (defect > 1e-10 && e.average) op.matrix = g_average(op.matrix, ghat);
      }
      ops.push_back(std::move(op));
    }
    if (worst_defect > 1e-10) {
      std::ostringstream w;
      w << std::setprecision(3) << (e.average ? "g-averaged" : "not-g-invariant")
        << "(defect=" << worst_defect << ")";
      row.warning = w.str();
    }
    row.lhs = omega_g(e.action, ghat, ops);
    row.target = target;
    fill_errors(row);
    row.seconds = seconds_since(t0);
    table.rows.push_back(std::move(row));
  }
  finish_table(table);
  return table;
}

ConvergenceTable trace_formula_experiment(const TraceFormulaExperiment& e) {
  check_schedule(e.hbar, e.cutoffs, true);
  ConvergenceTable table;
  table.kind = "trace-formula";
  for (std::size_t i = 0; i < e.cutoffs.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const double hbar = e.hbar.size() == 1 ? e.hbar[0] : e.hbar[i];
    HermiteBasisConfig cfg;
    cfg.n = e.function.n();
    cfg.cutoff = e.cutoffs[i];
    cfg.length = e.length(hbar);
    cfg.truncation = e.truncation;
    cfg.quad_nodes = e.quad_nodes;
    const BasisPtr basis = make_basis(cfg);
    const TraceFormulaValue v =
        equivariant_trace_formula(e.function, hbar, e.action, basis, e.quadrature);
    ConvergenceRow row;
    row.hbar = hbar;
    row.cutoff = e.cutoffs[i];
    row.lhs = v.lhs;
    row.target = v.rhs;
    fill_errors(row);
    row.seconds = seconds_since(t0);
    table.rows.push_back(std::move(row));
  }
  finish_table(table);
  return table;
}

PairingValue idempotent_trace_pairing(const DeformedOperator& t, int n) {
  if (!t.basis || t.basis->n() != n) {
    throw Error(ErrorCode::DimensionMismatch, "pairing: operator basis has the wrong dimension");
  }
  const Mat& m = t.matrix;
  if ((m * m - m).norm() > 1e-8) {
    throw Error(ErrorCode::NotIdempotent, "pairing: T is not idempotent to 1e-8");
  }
  IsometryAction id = analyze_isometry(RMat::Identity(n, n), Mat::Identity(1, 1),
                                       Mat::Identity(1, 1));
  id.description = "identity";
  const std::vector<DeformedOperator> ts(2 * n + 1, t);
  // (2 pi i)^n n! scaling of omega cancels the pairing's (2 pi i)^{-n} (n!)^{-1}.
  return {omega_g(id, Mat(), ts), m.trace()};
}

DeformedOperator basis_projector(const BasisPtr& basis, const std::vector<int>& modes) {
  Mat p = Mat::Zero(basis->dim(), basis->dim());
  for (int k : modes) {
    if (k < 0 || k >= basis->dim()) throw Error(ErrorCode::IndexOutOfRange, "projector: bad mode");
    p(k, k) = 1.0;
  }
  return {std::move(p), 1.0, basis};
}

}  // namespace equivix
