#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "equivix/isometry.hpp"
#include "equivix/matrix_field.hpp"
#include "equivix/quadrature.hpp"
#include "equivix/symbols.hpp"

namespace equivix {

struct IndexResult {
  std::string method;  // "integral" or "fixed-point"
  std::string g_description;
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  long long evaluations = 0;
  double seconds = 0.0;
  bool converged = true;
  int n_g = 0;
  double det_normal = 1.0;
  /// Prefactor-scaled value after each quadrature level.
  std::vector<cplx> history;

  long long nearest_integer() const;
  nlohmann::json to_json() const;
};

enum class IndexMethod { Auto, Integral, FixedPoint };
IndexMethod parse_index_method(const std::string& s);

/// Coefficient of du1 deta1 ... du_{n_g} deta_{n_g} in tr[G ehat (d ehat)^{2 n_g}]
/// at w = (u, eta) in T*(R^n)^g; normal coordinates are held at zero.
cplx chern_integrand(const SymbolField& a, const IsometryAction& g, const Vec& w,
                     DerivativeMode mode = DerivativeMode::Auto);

/// 1 / ((2 pi i)^{n_g} n_g! det_normal).
cplx index_prefactor(int n_g, double det_normal);

IndexResult equivariant_index_integral(const SymbolField& a, const IsometryAction& g,
                                       const QuadratureConfig& q,
                                       DerivativeMode mode = DerivativeMode::Auto);

/// tr[diag(g^V, g^W) ehat(0)] / det_normal, for isolated fixed points only.
IndexResult fixed_point_index(const SymbolField& a, const IsometryAction& g,
                              double det_floor = 1e-6);

IndexResult compute_index(const SymbolField& a, const IsometryAction& g,
                          IndexMethod method, const QuadratureConfig& q,
                          double det_floor = 1e-6);

/// Multilinear functional on matrix fields of a fixed arity (degree + 1).
struct CyclicCocycle {
  int degree = 0;
  std::string name;
  std::function<cplx(const std::vector<MatrixField>&)> eval;

  cplx operator()(const std::vector<MatrixField>& fs) const;
};

struct EpsilonOptions {
  QuadratureConfig quadrature;
  /// Sample-check that each argument is g-invariant before integrating.
  bool check_invariance = true;
  double invariance_tol = 1e-8;
};

/// The symbol-side cocycle: integral of tr[G f0 df1 ... df_{2 n_g}] over
/// T*(R^n)^g with the index prefactor, or tr[G f0(0)] / det_normal if n_g = 0.
/// `fiber` is the representation on the fields' fiber (identity if empty).
QuadratureResult epsilon_cocycle(const IsometryAction& g, const Mat& fiber,
                                 const std::vector<MatrixField>& fields,
                                 const EpsilonOptions& opts = {});

CyclicCocycle epsilon_functional(const IsometryAction& g, const Mat& fiber,
                                 const EpsilonOptions& opts = {});

/// Connes pairing (2 pi i)^{-l} (l!)^{-1} [phi(e,...,e) - phi(p0,...,p0)],
/// phi of degree 2l. e must be pointwise idempotent (checked at samples).
cplx k_pairing(const CyclicCocycle& phi, const MatrixField& e,
               const std::optional<Mat>& reference = std::nullopt,
               std::uint64_t seed = 1);

}  // namespace equivix
