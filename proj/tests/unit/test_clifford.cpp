#include <doctest.h>

#include "equivix/clifford.hpp"
#include "equivix/error.hpp"
#include "equivix/isometry.hpp"
#include "helpers.hpp"

using namespace equivix;
using equivix::testing::max_abs;

namespace {

Mat rows4(std::initializer_list<std::initializer_list<double>> r) {
  Mat m(4, 4);
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("basis order and size") {
  const CliffordAlgebra a1(1);
  CHECK(a1.dim() == 4);
  CHECK(a1.label(0) == "1");
  CHECK(a1.label(1) == "e1e2");
  CHECK(a1.label(2) == "e1");
  CHECK(a1.label(3) == "e2");

  const CliffordAlgebra a2(2);
  CHECK(a2.dim() == 16);
  CHECK(a2.even_dim() == 8);
  for (int k = 0; k < a2.dim(); ++k) {
    CHECK((CliffordAlgebra::degree(a2.monomial(k)) % 2 == 0) == (k < 8));
  }
  // degree 2 even block in lexicographic order
  CHECK(a2.label(1) == "e1e2");
  CHECK(a2.label(2) == "e1e3");
  CHECK(a2.label(6) == "e3e4");
  CHECK(a2.label(7) == "e1e2e3e4");

  CHECK(CliffordAlgebra(3).dim() == 64);
  CHECK_THROWS_AS(CliffordAlgebra(0), Error);
  CHECK_THROWS_AS(CliffordAlgebra(-2), Error);
  try {
    CliffordAlgebra bad(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDimension);
  }
}

TEST_CASE("n_half = 1 multiplication matrices") {
  const CliffordAlgebra a(1);
  CHECK(max_abs(a.left_mult(1) - rows4({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}})) == 0.0);
  CHECK(max_abs(a.left_mult(2) - rows4({{0, 0, 0, 1}, {0, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}})) == 0.0);
  CHECK(max_abs(a.twisted_right_mult(1) -
                rows4({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}})) == 0.0);
  CHECK(max_abs(a.twisted_right_mult(2) -
                rows4({{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}})) == 0.0);
  CHECK_THROWS_AS(a.left_mult(0), Error);
  CHECK_THROWS_AS(a.left_mult(3), Error);
  CHECK_THROWS_AS(a.twisted_right_mult(5), Error);
}

TEST_CASE("anticommutation relations are exact") {
  for (int nh = 1; nh <= 3; ++nh) {
    const CliffordAlgebra a(nh);
    const Mat id = Mat::Identity(a.dim(), a.dim());
    const int e = a.even_dim();
    for (int i = 1; i <= a.generators(); ++i) {
      const Mat ci = a.left_mult(i);
      const Mat hi = a.twisted_right_mult(i);
      // odd operators: zero diagonal blocks
      CHECK(max_abs(ci.topLeftCorner(e, e)) == 0.0);
      CHECK(max_abs(hi.bottomRightCorner(e, e)) == 0.0);
      for (int j = 1; j <= a.generators(); ++j) {
        const Mat cj = a.left_mult(j);
        const Mat hj = a.twisted_right_mult(j);
        const double d = (i == j) ? 2.0 : 0.0;
        CHECK(max_abs(ci * cj + cj * ci - d * id) == 0.0);
        CHECK(max_abs(hi * hj + hj * hi + d * id) == 0.0);
        CHECK(max_abs(ci * hj + hj * ci) == 0.0);
      }
    }
  }
}

TEST_CASE("element product agrees with left multiplication") {
  const CliffordAlgebra a(2);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const Vec v = equivix::testing::random_vec(4, rng);
    CVec w = CVec::Zero(a.dim());
    for (int k = 0; k < a.dim(); ++k) w(k) = cplx(std::cos(k + t), std::sin(3.0 * k));
    const CliffordElement x(a, w);
    const CliffordElement vx = CliffordElement::vector(a, v) * x;
    Mat cv = Mat::Zero(a.dim(), a.dim());
    for (int i = 0; i < 4; ++i) cv += v(i) * a.left_mult(i + 1);
    CHECK((vx.coefficients() - cv * w).norm() < 1e-13);
    // v v = |v|^2
    const CliffordElement vv = CliffordElement::vector(a, v) * CliffordElement::vector(a, v);
    CHECK(std::abs(vv.coefficients()(0) - v.squaredNorm()) < 1e-13);
    CHECK(vv.coefficients().tail(a.dim() - 1).norm() < 1e-13);
    // grading involution squares to the identity and splits even + odd
    CHECK((x.grading_involution().grading_involution().coefficients() - w).norm() == 0.0);
    CHECK(((x.even_part() + x.odd_part()).coefficients() - w).norm() == 0.0);
  }
}

TEST_CASE("so_action") {
  const CliffordAlgebra a(1);
  for (double th : {0.3, kPi / 2, 2.0}) {
    const Mat s = a.so_action(rotation_matrix(th));
    CHECK(max_abs(s.topLeftCorner(2, 2) - Mat::Identity(2, 2)) < 1e-15);
    Mat odd(2, 2);
    odd << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    CHECK(max_abs(s.bottomRightCorner(2, 2) - odd) < 1e-15);
    CHECK(max_abs(s.topRightCorner(2, 2)) == 0.0);
  }
  CHECK(max_abs(a.so_action(RMat::Identity(2, 2)) - Mat::Identity(4, 4)) == 0.0);

  const CliffordAlgebra b(2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const RMat g1 = equivix::testing::random_rotation(4, rng);
    const RMat g2 = equivix::testing::random_rotation(4, rng);
    const Mat s1 = b.so_action(g1);
    CHECK(max_abs(b.so_action(g1 * g2) - s1 * b.so_action(g2)) < 1e-12);
    CHECK(max_abs(s1.adjoint() * s1 - Mat::Identity(16, 16)) < 1e-12);
    CHECK(max_abs(s1.topRightCorner(8, 8)) < 1e-14);
    CHECK(max_abs(s1.bottomLeftCorner(8, 8)) < 1e-14);
  }
  RMat skew = RMat::Identity(2, 2);
  skew(0, 1) = 0.5;
  try {
    a.so_action(skew);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
  CHECK_THROWS_AS(a.so_action(RMat::Identity(4, 4)), Error);
}
