#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "equivix/cocycle.hpp"
#include "equivix/deformation.hpp"
#include "equivix/error.hpp"
#include "equivix/linalg.hpp"
#include "equivix/quadrature.hpp"
#include "helpers.hpp"

using namespace equivix;
using equivix::testing::max_abs;

namespace {

BasisPtr basis_1d(int cutoff, double length) {
  HermiteBasisConfig c;
  c.cutoff = cutoff;
  c.length = length;
  return make_basis(c);
}

BasisPtr basis_2d(int cutoff, double length, Truncation t) {
  HermiteBasisConfig c;
  c.n = 2;
  c.cutoff = cutoff;
  c.length = length;
  c.truncation = t;
  return make_basis(c);
}

IsometryAction plain(const RMat& g) {
  return analyze_isometry(g, Mat::Identity(1, 1), Mat::Identity(1, 1));
}

TestFunction term1(cplx c, Factor1D f) { return TestFunction(1, {TestTerm{c, {f}}}); }

}  // namespace

TEST_CASE("test-function transform matches numerical Fourier integral") {
  const TestFunction f = term1(cplx(0.5, -1.0), Factor1D{2, 0.7, 0.3, 3, 0.9, -0.4}) +
                         term1(2.0, Factor1D{1, 1.2, 0.0, 1, 0.5, 0.6});
  const GaussRule rule = gauss_legendre(400, -14.0, 14.0);
  for (double x : {-1.0, 0.2, 1.7}) {
    for (double y : {-3.0, 0.0, 0.8, 2.5}) {
      cplx num = 0.0;
      Vec z(2);
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        z << x, rule.nodes[k];
        num += rule.weights[k] * f(z) * std::exp(-kI * rule.nodes[k] * y);
      }
      Vec xv(1), yv(1);
      xv << x;
      yv << y;
      CHECK(std::abs(f.transform(xv, yv) - num) < 1e-8 * std::max(1.0, std::abs(num)));
    }
  }
}

TEST_CASE("test-function calculus") {
  const TestFunction f = term1(1.5, Factor1D{2, 0.8, 0.1, 1, 0.6, 0.2});
  const TestFunction g = term1(cplx(0, 1), Factor1D{0, 0.3, -0.2, 2, 0.4, 0.0});
  Vec z(2);
  z << 0.4, -0.9;
  const double h = 1e-5;
  for (int k = 0; k < 2; ++k) {
    Vec e = Vec::Zero(2);
    e(k) = h;
    const cplx fd = (f(z + e) - f(z - e)) / (2 * h);
    CHECK(std::abs(f.derivative(k)(z) - fd) < 1e-8);
  }
  CHECK(std::abs((f * g)(z) - f(z) * g(z)) < 1e-14);
  CHECK(std::abs((f + g)(z) - (f(z) + g(z))) < 1e-14);
  CHECK(std::abs(f.scaled(cplx(0, 2))(z) - cplx(0, 2) * f(z)) < 1e-14);

  const MatrixField mf = f.field();
  CHECK(std::abs(mf.value(z)(0, 0) - f(z)) < 1e-15);
  CHECK(std::abs(mf.partial(z, 1)(0, 0) - f.derivative(1)(z)) < 1e-14);

  // pullback of an isotropic centred term under a rotation
  const TestFunction iso(2, {TestTerm{1.0, {Factor1D{1, 0.5, 0, 0, 0.5, 0}, Factor1D{0, 0.5, 0, 1, 0.5, 0}}}});
  const RMat g2 = rotation_matrix(0.7);
  Vec w(4);
  w << 0.3, -1.1, 0.8, 0.25;
  Vec wp(4);
  wp << g2.transpose() * w.head(2), g2.transpose() * w.tail(2);
  CHECK(std::abs(iso.pullback(g2)(w) - iso(wp)) < 1e-14);
  const TestFunction aniso(2, {TestTerm{1.0, {Factor1D{0, 0.5, 0, 0, 0.5, 0}, Factor1D{0, 0.9, 0, 0, 0.5, 0}}}});
  CHECK_THROWS_AS(aniso.pullback(g2), Error);

  const TestFunction round = TestFunction::from_json(f.to_json());
  CHECK(std::abs(round(z) - f(z)) < 1e-15);
}

TEST_CASE("hermite basis") {
  const double len = 0.7;
  const int N = 12;
  const GaussRule rule = gauss_legendre(200, -15.0, 15.0);
  Vec x(static_cast<int>(rule.nodes.size()));
  for (int i = 0; i < x.size(); ++i) x(i) = rule.nodes[i];
  const RMat psi = hermite_functions(N, x, len);
  RMat gram = RMat::Zero(N, N), xm = RMat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      for (int k = 0; k < x.size(); ++k) {
        gram(i, j) += rule.weights[k] * psi(i, k) * psi(j, k);
        xm(i, j) += rule.weights[k] * psi(i, k) * x(k) * psi(j, k);
      }
    }
  }
  CHECK((gram - RMat::Identity(N, N)).cwiseAbs().maxCoeff() < 1e-12);
  const RMat lx = ladder_x_1d(N, len);
  CHECK((lx - xm).cwiseAbs().maxCoeff() < 1e-11);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (std::abs(i - j) > 1) {
        CHECK(lx(i, j) == 0.0);
        CHECK(ladder_dx_1d(N, len)(i, j) == 0.0);
      }
  CHECK((ladder_dx_1d(N, len) + ladder_dx_1d(N, len).transpose()).cwiseAbs().maxCoeff() == 0.0);

  const BasisPtr tensor = basis_2d(6, 1.0, Truncation::Tensor);
  const BasisPtr total = basis_2d(6, 1.0, Truncation::TotalDegree);
  CHECK(tensor->dim() == 36);
  CHECK(total->dim() == 21);
  CHECK(total->max_level() == 5);
  for (int k = 1; k < total->dim(); ++k) CHECK(total->level(k) >= total->level(k - 1));
  CHECK(total->index_of({0, 0}) == 0);
  CHECK(total->index_of({5, 1}) == -1);
  CHECK(total->multi_index(total->index_of({2, 3})) == std::vector<int>{2, 3});

  HermiteBasisConfig bad;
  bad.cutoff = 3;
  CHECK_THROWS_AS(make_basis(bad), Error);
  CHECK(parse_truncation("total_degree") == Truncation::TotalDegree);
  CHECK_THROWS_AS(parse_truncation("sparse"), Error);
}

TEST_CASE("rho_hbar basics") {
  const double hbar = 0.5;
  const BasisPtr b = basis_1d(30, std::sqrt(hbar));
  const DeformedOperator zero = rho_hbar(TestFunction::zero(1), hbar, b);
  CHECK(max_abs(zero.matrix) == 0.0);
  for (double a : {1.0, 0.6}) {
    const DeformedOperator t = rho_hbar(TestFunction::gaussian(1, a, 1.3), hbar, b);
    // (2 pi hbar)^{-1} int e^{-a x^2 - b xi^2} = 1 / (2 hbar sqrt(a b))
    CHECK(std::abs(t.trace() - 1.0 / (2 * hbar * std::sqrt(a * 1.3))) < 1e-8);
  }
  CHECK_THROWS_AS(rho_hbar(TestFunction::gaussian(1, 1, 1), 0.0, b), Error);
  CHECK_THROWS_AS(rho_hbar(TestFunction::gaussian(2, 1, 1), hbar, b), Error);
  // evaluator path agrees with the separable path
  const TestFunction f = term1(1.0, Factor1D{1, 0.8, 0.1, 1, 0.9, 0.0});
  const Mat sep = rho_hbar(f, hbar, b).matrix;
  const Mat ev = rho_hbar(transform_field(f), hbar, b).matrix;
  CHECK(relative_frobenius(ev, sep) < 1e-9);
}

TEST_CASE("star product") {
  const TestFunction f1 = term1(1.0, Factor1D{1, 0.6, 0.0, 0, 0.7, 0.2});
  const TestFunction f2 = term1(cplx(0, 1), Factor1D{0, 0.9, 0.3, 1, 0.5, 0.0});
  const TestFunction f3 = TestFunction::gaussian(1, 0.8, 0.8);
  const TransformField s0 = star_H(f1, f2, 0.0);
  const TestFunction prod = f1 * f2;
  Vec x(1), y(1);
  for (double xv : {-0.5, 0.4}) {
    for (double yv : {-1.0, 0.7}) {
      x << xv;
      y << yv;
      CHECK(std::abs(s0.eval(x, y) - prod.transform(x, y)) < 1e-12);
    }
  }
  // associativity at hbar = 0.5
  const double hbar = 0.5;
  const TransformField t1 = transform_field(f1), t2 = transform_field(f2), t3 = transform_field(f3);
  const TransformField left = star_H(star_H(t1, t2, hbar), t3, hbar);
  const TransformField right = star_H(t1, star_H(t2, t3, hbar), hbar);
  for (auto [xv, yv] : {std::pair{0.3, -0.4}, std::pair{-0.8, 1.1}}) {
    x << xv;
    y << yv;
    const cplx l = left.eval(x, y), r = right.eval(x, y);
    CHECK(std::abs(l - r) < 1e-8);
  }
}

TEST_CASE("derivations") {
  const double hbar = 0.5;
  const BasisPtr b = basis_1d(40, std::sqrt(hbar));
  const DeformedOperator id{Mat::Identity(b->dim(), b->dim()), hbar, b};
  CHECK(max_abs(derivation_delta(1, id).matrix) == 0.0);
  CHECK(max_abs(derivation_delta(2, id).matrix) == 0.0);
  CHECK_THROWS_AS(derivation_delta(3, id), Error);

  const TestFunction f = TestFunction::gaussian(1, 1.0, 1.0);
  std::vector<double> e1, e2;
  for (int N : {20, 30, 40}) {
    const BasisPtr bn = basis_1d(N, std::sqrt(hbar));
    const DeformedOperator t = rho_hbar(f, hbar, bn);
    e1.push_back(relative_frobenius(derivation_delta(1, t).matrix, rho_hbar(f.derivative(0), hbar, bn).matrix));
    const Mat target = (-hbar / kI) * rho_hbar(f.derivative(1), hbar, bn).matrix;
    e2.push_back(relative_frobenius(derivation_delta(2, t).matrix, target));
  }
  CHECK(e1[2] < 1e-3);
  CHECK(e2[2] < 1e-3);
  CHECK(e1[0] > e1[1]);
  CHECK(e1[1] > e1[2]);
  CHECK(e2[0] > e2[1]);
  CHECK(e2[1] > e2[2]);

  // derivations in different coordinates commute exactly
  const BasisPtr b2 = basis_2d(8, 1.0, Truncation::Tensor);
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd;
  Mat m(b2->dim(), b2->dim());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = cplx(nd(rng), nd(rng));
  const DeformedOperator t{m, 1.0, b2};
  for (auto [i, j] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{2, 3}, std::pair{2, 4}}) {
    const Mat ij = derivation_delta(i, derivation_delta(j, t)).matrix;
    const Mat ji = derivation_delta(j, derivation_delta(i, t)).matrix;
    CHECK(max_abs(ij - ji) < 1e-12 * max_abs(ij));
  }
}

TEST_CASE("group representation") {
  const BasisPtr b = basis_2d(6, 1.0, Truncation::TotalDegree);
  CHECK(max_abs(group_rep_matrix(RMat::Identity(2, 2), *b) - Mat::Identity(b->dim(), b->dim())) < 1e-14);
  const Mat g = group_rep_matrix(rotation_matrix(kPi / 2), *b);
  CHECK(is_unitary(g, 1e-10));
  for (int L = 0; L <= b->max_level(); ++L) {
    const Mat p = b->level_projector(L).cast<cplx>().asDiagonal();
    CHECK(max_abs(g * p - p * g) < 1e-12);
  }
  CHECK(std::abs(g(0, 0) - 1.0) < 1e-14);
  CHECK(g.col(0).tail(b->dim() - 1).norm() < 1e-14);

  // (g phi)(x) = phi(g^{-1} x): check on psi_{1,0} ~ x1 e^{-|x|^2/2}
  const double th = 0.6;
  const Mat gt = group_rep_matrix(rotation_matrix(th), *b);
  const int k10 = b->index_of({1, 0}), k01 = b->index_of({0, 1});
  CHECK(std::abs(gt(k10, k10) - std::cos(th)) < 1e-12);
  CHECK(std::abs(gt(k01, k10) - std::sin(th)) < 1e-12);

  // composition, and log/exp round trip
  const Mat g2 = group_rep_matrix(rotation_matrix(0.9), *b);
  CHECK(max_abs(group_rep_matrix(rotation_matrix(1.5), *b) - g2 * gt) < 1e-12);
  const RMat r3 = block_rotation({1.2, 2.8});
  const RMat lg = orthogonal_log(r3);
  CHECK((lg + lg.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((RMat(lg.exp()) - r3).cwiseAbs().maxCoeff() < 1e-12);

  // a rotation in (x1, x2) commutes with x3 and d/dx3
  HermiteBasisConfig c3;
  c3.n = 3;
  c3.cutoff = 6;
  c3.truncation = Truncation::TotalDegree;
  const BasisPtr b3 = make_basis(c3);
  RMat g3 = RMat::Identity(3, 3);
  g3.topLeftCorner(2, 2) = rotation_matrix(0.8);
  const Mat gh = group_rep_matrix(g3, *b3);
  const Mat x3 = Mat(b3->ladder_x(2).cast<cplx>());
  const Mat d3 = Mat(b3->ladder_dx(2).cast<cplx>());
  CHECK(max_abs(gh * x3 - x3 * gh) < 1e-12);
  CHECK(max_abs(gh * d3 - d3 * gh) < 1e-12);
}

TEST_CASE("rho_hbar is equivariant") {
  const double hbar = 0.5;
  const BasisPtr b = basis_2d(30, std::sqrt(hbar), Truncation::TotalDegree);
  const RMat g = rotation_matrix(0.7);
  const TestFunction f(2, {TestTerm{1.0, {Factor1D{1, 0.4, 0, 0, 0.4, 0}, Factor1D{0, 0.4, 0, 1, 0.4, 0}}}});
  const Mat gh = group_rep_matrix(g, *b);
  const Mat lhs = gh * rho_hbar(f, hbar, b).matrix * gh.adjoint();
  const Mat rhs = rho_hbar(f.pullback(g), hbar, b).matrix;
  CHECK(relative_frobenius(lhs, rhs) < 1e-3);
}

TEST_CASE("g averaging") {
  const BasisPtr b = basis_2d(6, 1.0, Truncation::TotalDegree);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> nd;
  Mat t(b->dim(), b->dim());
  for (int i = 0; i < t.rows(); ++i)
    for (int j = 0; j < t.cols(); ++j) t(i, j) = cplx(nd(rng), nd(rng));
  for (double th : {kPi / 2, 1.0}) {
    const Mat g = group_rep_matrix(rotation_matrix(th), *b);
    const Mat avg = g_average(t, g);
    CHECK(max_abs(g * avg - avg * g) < 1e-10);
    CHECK(max_abs(g_average(avg, g) - avg) < 1e-10);
  }
}

TEST_CASE("omega_g") {
  const double hbar = 0.5;
  const BasisPtr b = basis_1d(20, std::sqrt(hbar));
  const IsometryAction id = plain(RMat::Identity(1, 1));
  const DeformedOperator t0 = rho_hbar(TestFunction::gaussian(1, 0.5, 0.5), hbar, b);
  const DeformedOperator t1 = rho_hbar(term1(1.0, Factor1D{1, 0.5, 0, 0, 0.5, 0}), hbar, b);
  const DeformedOperator t2 = rho_hbar(term1(1.0, Factor1D{0, 0.5, 0, 1, 0.5, 0}), hbar, b);
  const DeformedOperator one{Mat::Identity(b->dim(), b->dim()), hbar, b};
  CHECK(std::abs(omega_g(id, Mat(), {t0, one, t2})) < 1e-14);

  // explicit form of the degree-two cocycle
  const Mat d11 = derivation_delta(1, t1).matrix, d21 = derivation_delta(2, t1).matrix;
  const Mat d12 = derivation_delta(1, t2).matrix, d22 = derivation_delta(2, t2).matrix;
  const cplx manual = -((t0.matrix * d11 * d22).trace() - (t0.matrix * d21 * d12).trace());
  CHECK(std::abs(omega_g(id, Mat(), {t0, t1, t2}) - manual) < 1e-12 * std::abs(manual));

  // isolated fixed point: omega_g(T) = Tr(ghat T) and agrees with the trace formula
  const BasisPtr b2 = basis_2d(30, 1.0, Truncation::Tensor);
  const IsometryAction rot = plain(rotation_matrix(kPi / 2));
  const TestFunction g = TestFunction::gaussian(2, 0.3, 0.3);
  const DeformedOperator t = rho_hbar(g, hbar, b2);
  const Mat gh = group_rep_matrix(rot, *b2);
  const cplx w = omega_g(rot, gh, {t});
  CHECK(std::abs(w - (gh * t.matrix).trace()) < 1e-12);
  QuadratureConfig q;
  q.max_level = 3;
  q.rel_tol = 1e-10;
  const TraceFormulaValue tf = equivariant_trace_formula(g, hbar, rot, b2, q, gh);
  CHECK(std::abs(w - tf.rhs) < 1e-3 * std::abs(tf.rhs));
  CHECK(std::abs(tf.rhs - 1.0 / (2 + 4 * 0.09 * hbar * hbar)) < 1e-8);
}

TEST_CASE("trace formula at g = I and for zero input") {
  const double hbar = 0.5;
  const BasisPtr b = basis_1d(30, std::sqrt(hbar));
  const IsometryAction id = plain(RMat::Identity(1, 1));
  QuadratureConfig q;
  q.max_level = 3;
  q.rel_tol = 1e-10;
  const TraceFormulaValue v = equivariant_trace_formula(TestFunction::gaussian(1, 0.7, 0.9), hbar, id, b, q);
  const double exact = 1.0 / (2 * hbar * std::sqrt(0.7 * 0.9));
  CHECK(std::abs(v.rhs - exact) < 1e-8);
  CHECK(std::abs(v.lhs - exact) < 1e-8);
  const TraceFormulaValue z = equivariant_trace_formula(TestFunction::zero(1), hbar, id, b, q);
  CHECK(std::abs(z.lhs) == 0.0);
  CHECK(std::abs(z.rhs) == 0.0);
}

TEST_CASE("omega is a cyclic cocycle on truncated operators") {
  const double hbar = 0.5;
  const BasisPtr b = basis_1d(25, std::sqrt(hbar));
  const IsometryAction id = plain(RMat::Identity(1, 1));
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> w(0.4, 1.2), s(-0.5, 0.5);
  std::vector<std::vector<DeformedOperator>> tuples;
  for (int t = 0; t < 4; ++t) {
    std::vector<DeformedOperator> tup;
    for (int k = 0; k < 4; ++k) {
      tup.push_back(rho_hbar(term1(cplx(s(rng), s(rng)), Factor1D{k % 2, w(rng), s(rng), 0, w(rng), s(rng)}), hbar, b));
    }
    tuples.push_back(tup);
  }
  auto phi = [&](const std::vector<DeformedOperator>& ts) { return omega_g(id, Mat(), ts); };
  auto mul = [](const DeformedOperator& a, const DeformedOperator& c) {
    return DeformedOperator{a.matrix * c.matrix, a.hbar, a.basis};
  };
  const CocycleReport rep = cocycle_check<DeformedOperator>(phi, 2, tuples, mul, 1e-6);
  CHECK(rep.pass);
  // zero operator in a middle slot: every term vanishes
  std::vector<std::vector<DeformedOperator>> zeroed = tuples;
  zeroed[0][1].matrix.setZero();
  CHECK(cocycle_check<DeformedOperator>(phi, 2, zeroed, mul, 1e-12).max_coboundary < 1e-12);
}

TEST_CASE("limit experiment edge cases") {
  LimitExperiment e;
  e.action = plain(RMat::Identity(1, 1));
  e.functions = {TestFunction::zero(1), TestFunction::zero(1), TestFunction::zero(1)};
  e.hbar = {0.8, 0.5};
  e.cutoffs = {10, 14};
  e.target = cplx(0.0);
  const ConvergenceTable t = semiclassical_limit_experiment(e);
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) CHECK(std::abs(r.lhs) == 0.0);
  CHECK(t.to_csv().rfind("hbar,N,lhs_re,lhs_im,target_re,target_im,abs_err,rel_err,seconds,warning\n", 0) == 0);

  e.hbar = {};
  e.cutoffs = {};
  CHECK_THROWS_AS(semiclassical_limit_experiment(e), Error);
  e.hbar = {0.5, 0.8};
  e.cutoffs = {10, 14};
  CHECK_THROWS_AS(semiclassical_limit_experiment(e), Error);
  e.hbar = {0.8};
  CHECK_THROWS_AS(semiclassical_limit_experiment(e), Error);
}

TEST_CASE("appendix pairing") {
  const BasisPtr b = basis_1d(40, 1.0);
  const PairingValue p0 = idempotent_trace_pairing(basis_projector(b, {}), 1);
  CHECK(std::abs(p0.pairing) == 0.0);
  const PairingValue p1 = idempotent_trace_pairing(basis_projector(b, {0}), 1);
  CHECK(std::abs(p1.pairing - p1.trace) < 1e-2);
  const PairingValue p2 = idempotent_trace_pairing(basis_projector(b, {0, 1}), 1);
  CHECK(std::abs(p2.pairing - 2.0) < 1e-2);
  DeformedOperator half = basis_projector(b, {0});
  half.matrix *= 0.5;
  try {
    idempotent_trace_pairing(half, 1);
    FAIL("expected not-idempotent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIdempotent);
  }
}
