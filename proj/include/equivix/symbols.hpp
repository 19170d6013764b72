#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "equivix/isometry.hpp"
#include "equivix/matrix_field.hpp"
#include "equivix/types.hpp"

namespace equivix {

/// Matrix-valued symbol a(x, xi): C^{dim_v} -> C^{dim_w} on phase space R^{2n}.
/// Phase points are ordered z = (x_1..x_n, xi_1..xi_n).
struct SymbolField {
  int n = 0;
  int dim_v = 0;
  int dim_w = 0;
  double order = 0.0;
  std::string name;
  std::function<Mat(const Vec&)> eval;
  /// Exact partial derivative along coordinate k; empty means use finite differences.
  std::function<Mat(const Vec&, int)> deriv;
  /// Fiber representations (g^V, g^W) induced by g in SO(n); empty means trivial.
  std::function<std::pair<Mat, Mat>(const RMat&)> fiber_action;

  int phase_dim() const { return 2 * n; }
  Mat operator()(const Vec& z) const;
  bool has_exact_derivative() const { return static_cast<bool>(deriv); }
};

enum class MatrixRole { GraphProjection, HatProjection, IntegrandFactor };

struct PointMatrix {
  Mat m;
  Vec z;
  MatrixRole role = MatrixRole::IntegrandFactor;
};

enum class DerivativeMode { Auto, Exact, FiniteDifference };

SymbolField bott_dirac_symbol(int n_half);

/// Symbol with polynomial entries, read from the JSON grammar in README.
SymbolField polynomial_symbol(const nlohmann::json& spec);
SymbolField load_symbol_file(const std::string& path);
/// "bott-dirac:<n_half>" or a path to a polynomial symbol file.
SymbolField parse_symbol_spec(const std::string& text);

/// Directional derivative of a along v, exact when available.
Mat symbol_directional(const SymbolField& a, const Vec& z, const Vec& v,
                       DerivativeMode mode = DerivativeMode::Auto);
/// 4th-order central difference along v with step h = 1e-3 (1 + |z|).
Mat symbol_directional_fd(const SymbolField& a, const Vec& z, const Vec& v);

PointMatrix graph_projection(const SymbolField& a, const Vec& z);
PointMatrix hat_projection(const SymbolField& a, const Vec& z);

/// Graph projection and its derivatives along dirs, through
/// d(M^{-1} B) = M^{-1}(dB - dM M^{-1} B) with M = 1 + a*a.
Jet graph_projection_jet(const SymbolField& a, const Vec& z,
                         const std::vector<Vec>& dirs,
                         DerivativeMode mode = DerivativeMode::Auto);
Jet hat_projection_jet(const SymbolField& a, const Vec& z,
                       const std::vector<Vec>& dirs,
                       DerivativeMode mode = DerivativeMode::Auto);

MatrixField graph_projection_field(const SymbolField& a,
                                   DerivativeMode mode = DerivativeMode::Auto);
MatrixField hat_projection_field(const SymbolField& a,
                                 DerivativeMode mode = DerivativeMode::Auto);
/// diag(0_V, I_W).
Mat reference_projection(const SymbolField& a);

/// Checks of a symbol report the worst margin seen and where.
struct CheckReport {
  std::string name;
  bool pass = false;
  double worst_margin = 0.0;
  int samples = 0;
  Vec worst_point;
  std::string detail;

  nlohmann::json to_json() const;
};

struct SamplingConfig {
  std::vector<double> radii;  // empty: derived from R
  int directions = 48;
  std::uint64_t seed = 20240517;
  /// Relative slack allowed below the bound (roundoff).
  double tolerance = 1e-10;
};

/// min eig(a* a) >= C |z|^{2m} on radial shells with |z|^2 >= R.
CheckReport ellipticity_check(const SymbolField& a, double C, double R,
                              const SamplingConfig& samples = {});

/// g^W a(g^{-1} z) (g^V)^{-1} == a(z) at sampled points.
CheckReport equivariance_check(const SymbolField& a, const IsometryAction& g,
                               const SamplingConfig& samples = {},
                               double tol = 1e-10);

/// sup ||a(z)|| / |z|^m over sampled |z| >= 1, compared against bound.
CheckReport order_growth_check(const SymbolField& a, double bound,
                               const SamplingConfig& samples = {});

/// Projection checks ||P^2 - P|| and ||P - P*|| at random points.
CheckReport projection_check(const SymbolField& a, int points,
                             std::uint64_t seed, double tol = 1e-12);

/// Builds the isometry action for g with the fiber reps the symbol declares.
IsometryAction symbol_action(const SymbolField& a, const GroupSpec& g,
                             IsometryOptions opts = {});

}  // namespace equivix
