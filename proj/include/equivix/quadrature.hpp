#pragma once

#include <functional>
#include <vector>

#include <nlohmann/json.hpp>

#include "equivix/types.hpp"

namespace equivix {

/// Tensor Gauss-Legendre on R^d after z_k = scale * tan(u_k).
///
/// Level L splits (-pi/2, pi/2) into 2^L panels of `nodes` points each.
/// Levels run from min_level upward until two successive levels agree to
/// max(abs_tol, rel_tol * |I|) or max_level is reached.
struct QuadratureConfig {
  int nodes = 16;
  int min_level = 0;
  int max_level = 2;
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  double scale = 1.0;
  /// Outer-coordinate slabs handed to one worker at a time.
  int cell_partition = 1;

  void validate() const;
  nlohmann::json to_json() const;
  /// Fields absent from j keep the values in base.
  static QuadratureConfig from_json(const nlohmann::json& j,
                                    const QuadratureConfig& base);
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  long long evaluations = 0;
  int level = 0;
  bool converged = false;
  /// Value after each completed level.
  std::vector<cplx> history;
};

using Integrand = std::function<cplx(const Vec&)>;

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(int n, double a, double b);

/// Single fixed level of the compactified tensor rule.
QuadratureResult integrate_level(int dim, const Integrand& f,
                                 const QuadratureConfig& cfg, int level);

/// Refinement driver. Never throws on non-convergence; check `converged`.
QuadratureResult integrate(int dim, const Integrand& f,
                           const QuadratureConfig& cfg);

/// Tensor Gauss-Legendre over a finite box, no compactification.
cplx integrate_box(const std::vector<GaussRule>& rules, const Integrand& f);

/// Pairwise summation; the result does not depend on evaluation order.
cplx pairwise_sum(const cplx* values, std::size_t count);

/// Worker count: hardware concurrency capped by EQUIVIX_THREADS.
int worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace equivix
