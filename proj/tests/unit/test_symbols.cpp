#include <doctest.h>

#include <nlohmann/json.hpp>

#include "equivix/error.hpp"
#include "equivix/isometry.hpp"
#include "equivix/symbols.hpp"
#include "helpers.hpp"

#ifndef EQUIVIX_DATA_DIR
#define EQUIVIX_DATA_DIR "data"
#endif

using namespace equivix;
using equivix::testing::max_abs;
using equivix::testing::random_vec;

namespace {

SymbolField scalar_symbol(const nlohmann::json& terms, double order) {
  return polynomial_symbol({{"n", 1},
                            {"dimV", 1},
                            {"dimW", 1},
                            {"order", order},
                            {"entries", {{{"row", 0}, {"col", 0}, {"terms", terms}}}}});
}

SymbolField zero_symbol() {
  return polynomial_symbol(
      {{"n", 1}, {"dimV", 1}, {"dimW", 1}, {"order", 1}, {"entries", nlohmann::json::array()}});
}

}  // namespace

TEST_CASE("bott-dirac n_half = 1 closed form") {
  const SymbolField a = bott_dirac_symbol(1);
  CHECK(a.n == 2);
  CHECK(a.dim_v == 2);
  CHECK(a.dim_w == 2);
  CHECK(a.order == 1.0);
  const double x1 = 0.7, x2 = -1.3, k1 = 0.4, k2 = 2.1;
  Vec z(4);
  z << x1, x2, k1, k2;
  Mat expect(2, 2);
  expect << cplx(x1, k1), cplx(-x2, k2), cplx(x2, k2), cplx(x1, -k1);
  CHECK(max_abs(a(z) - expect) < 1e-15);
  CHECK(max_abs(a(Vec::Zero(4))) == 0.0);
}

TEST_CASE("bott-dirac a*a = |z|^2") {
  std::mt19937_64 rng(1);
  for (int nh = 1; nh <= 3; ++nh) {
    const SymbolField a = bott_dirac_symbol(nh);
    CHECK(a.dim_v == (1 << (2 * nh - 1)));
    for (int t = 0; t < 10; ++t) {
      const Vec z = random_vec(2 * a.n, rng, 2.0);
      const Mat m = a(z);
      CHECK(max_abs(m.adjoint() * m - z.squaredNorm() * Mat::Identity(a.dim_v, a.dim_v)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(bott_dirac_symbol(0), Error);
}

TEST_CASE("exact derivatives match finite differences") {
  std::mt19937_64 rng(2);
  const nlohmann::json cubic = {{{"coeff", 1.0}, {"x", {3}}, {"xi", {0}}},
                                {{"coeff", {0.0, 2.0}}, {"x", {1}}, {"xi", {2}}}};
  for (const SymbolField& a : {bott_dirac_symbol(1), bott_dirac_symbol(2), scalar_symbol(cubic, 3)}) {
    for (int t = 0; t < 10; ++t) {
      const Vec z = random_vec(2 * a.n, rng);
      const Vec v = random_vec(2 * a.n, rng);
      const Mat exact = symbol_directional(a, z, v, DerivativeMode::Exact);
      const Mat fd = symbol_directional_fd(a, z, v);
      CHECK(max_abs(exact - fd) < 1e-6);
    }
  }
}

TEST_CASE("graph and hat projections") {
  const SymbolField a = bott_dirac_symbol(1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    Vec z = random_vec(4, rng, 3.0);
    const PointMatrix p = graph_projection(a, z);
    CHECK(p.role == MatrixRole::GraphProjection);
    CHECK(max_abs(p.m * p.m - p.m) < 1e-12);
    CHECK(max_abs(p.m - p.m.adjoint()) < 1e-12);
    // closed form of ehat for Bott-Dirac
    const Mat az = a(z);
    Mat closed(4, 4);
    closed << Mat::Identity(2, 2), az.adjoint(), az, -Mat::Identity(2, 2);
    closed /= 1.0 + z.squaredNorm();
    const PointMatrix h = hat_projection(a, z);
    CHECK(max_abs(h.m - closed) < 1e-12);
  }
  Vec z1 = random_vec(4, rng);
  z1.normalize();
  Mat half(4, 4);
  half << Mat::Identity(2, 2), a(z1).adjoint(), a(z1), -Mat::Identity(2, 2);
  CHECK(max_abs(hat_projection(a, z1).m - 0.5 * half) < 1e-12);

  Mat e0 = Mat::Zero(4, 4);
  e0(0, 0) = e0(1, 1) = 1.0;
  CHECK(max_abs(graph_projection(a, Vec::Zero(4)).m - e0) < 1e-15);
  Mat h0 = Mat::Identity(4, 4);
  h0(2, 2) = h0(3, 3) = -1.0;
  CHECK(max_abs(hat_projection(a, Vec::Zero(4)).m - h0) < 1e-15);

  const SymbolField zero = zero_symbol();
  Mat g0(2, 2);
  g0 << 1, 0, 0, 0;
  CHECK(max_abs(graph_projection(zero, Vec::Ones(2)).m - g0) == 0.0);
  Mat hz(2, 2);
  hz << 1, 0, 0, -1;
  CHECK(max_abs(hat_projection(zero, Vec::Ones(2)).m - hz) == 0.0);
}

TEST_CASE("hat projection decays") {
  const SymbolField a = bott_dirac_symbol(1);
  std::mt19937_64 rng(4);
  for (double r : {0.5, 1.0, 10.0, 100.0, 1000.0}) {
    for (int t = 0; t < 10; ++t) {
      Vec z = random_vec(4, rng);
      z *= r / z.norm();
      const Mat h = hat_projection(a, z).m;
      const double op = Eigen::JacobiSVD<Mat>(h).singularValues()(0);
      CHECK(op <= 2.0 / std::sqrt(1.0 + r * r) + 1e-15);
    }
  }
}

TEST_CASE("projection jets agree with finite differences") {
  const SymbolField a = bott_dirac_symbol(1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const Vec z = random_vec(4, rng);
    const Vec v = random_vec(4, rng);
    const Jet j = hat_projection_jet(a, z, {v});
    const double h = 1e-4;
    const Mat fd = (hat_projection(a, z + h * v).m - hat_projection(a, z - h * v).m) / (2 * h);
    CHECK(max_abs(j.partials[0] - fd) < 1e-7);
    CHECK(max_abs(j.value - hat_projection(a, z).m) < 1e-14);
  }
}

TEST_CASE("ellipticity check") {
  const CheckReport bott = ellipticity_check(bott_dirac_symbol(1), 1.0, 1.0);
  CHECK(bott.pass);
  CHECK(std::abs(bott.worst_margin) < 1e-12);

  const SymbolField z1 = scalar_symbol({{{"coeff", 1.0}, {"x", {1}}, {"xi", {0}}}}, 1);
  const CheckReport fail = ellipticity_check(z1, 0.5, 1.0);
  CHECK_FALSE(fail.pass);
  CHECK(fail.worst_margin < -0.9);

  const SymbolField one = scalar_symbol({{{"coeff", 1.0}, {"x", {0}}, {"xi", {0}}}}, 0);
  for (double R : {0.1, 1.0, 50.0}) CHECK(ellipticity_check(one, 1.0, R).pass);

  SymbolField rect = bott_dirac_symbol(1);
  rect.dim_w = 3;
  try {
    ellipticity_check(rect, 1.0, 1.0);
    FAIL("expected unsupported shape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedShape);
  }
}

TEST_CASE("equivariance check") {
  const SymbolField a = bott_dirac_symbol(1);
  for (double th : {0.3, kPi / 2, 2.0}) {
    const IsometryAction act = symbol_action(a, GroupSpec{rotation_matrix(th), "rotation"});
    CHECK(equivariance_check(a, act).pass);
  }
  const IsometryAction id = symbol_action(a, GroupSpec{RMat::Identity(2, 2), "identity"});
  CHECK(equivariance_check(a, id).pass);

  const IsometryAction bare =
      analyze_isometry(rotation_matrix(kPi / 2), Mat::Identity(2, 2), Mat::Identity(2, 2));
  CHECK_FALSE(equivariance_check(a, bare).pass);

  const IsometryAction wrong =
      analyze_isometry(rotation_matrix(0.3), Mat::Identity(3, 3), Mat::Identity(3, 3));
  CHECK_THROWS_AS(equivariance_check(a, wrong), Error);
}

TEST_CASE("order growth and projection checks") {
  CHECK(order_growth_check(bott_dirac_symbol(1), 1.0 + 1e-12).pass);
  CHECK_FALSE(order_growth_check(bott_dirac_symbol(1), 0.5).pass);
  const CheckReport p = projection_check(bott_dirac_symbol(2), 300, 9);
  CHECK(p.pass);
  CHECK(p.samples == 300);
}

TEST_CASE("symbol files and specs") {
  const SymbolField x1 = load_symbol_file(std::string(EQUIVIX_DATA_DIR) + "/symbols/x1-scalar.json");
  CHECK(x1.n == 1);
  Vec z(2);
  z << 2.0, 5.0;
  CHECK(std::abs(x1(z)(0, 0) - 2.0) < 1e-15);
  const SymbolField ann = parse_symbol_spec(std::string(EQUIVIX_DATA_DIR) + "/symbols/annihilation.json");
  CHECK(std::abs(ann(z)(0, 0) - cplx(2.0, 5.0)) < 1e-15);
  CHECK(parse_symbol_spec("bott-dirac:2").dim_v == 8);

  for (const char* bad : {"bott-dirac:", "bott-dirac:x", "bott-dirac:1x", "/nonexistent/file.json"}) {
    try {
      parse_symbol_spec(bad);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
  CHECK_THROWS_AS(polynomial_symbol({{"n", 1}, {"dimV", 1}}), Error);
  CHECK_THROWS_AS(polynomial_symbol({{"n", 1},
                                     {"dimV", 1},
                                     {"dimW", 1},
                                     {"order", 1},
                                     {"entries", {{{"row", 2}, {"col", 0}, {"terms", nlohmann::json::array()}}}}}),
                  Error);
}
