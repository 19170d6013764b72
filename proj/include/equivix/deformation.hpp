#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "equivix/chern_index.hpp"
#include "equivix/hermite.hpp"
#include "equivix/isometry.hpp"
#include "equivix/quadrature.hpp"
#include "equivix/test_function.hpp"

namespace equivix {

using BasisPtr = std::shared_ptr<const HermiteBasis>;

BasisPtr make_basis(const HermiteBasisConfig& cfg);

/// rho_hbar(fhat) as a matrix in a truncated Hermite basis.
struct DeformedOperator {
  Mat matrix;
  double hbar = 0.0;
  BasisPtr basis;

  cplx trace() const { return matrix.trace(); }
};

/// Matrix elements <psi_i, rho_hbar(fhat) psi_j> with
/// rho_hbar(fhat) phi(x) = (2 pi)^{-n} int fhat(x, y) phi(x + hbar y) dy.
/// Separable terms are assembled coordinate by coordinate.
DeformedOperator rho_hbar(const TestFunction& f, double hbar, const BasisPtr& basis);
/// Same for a transform given only as an evaluator (n = 1 only).
DeformedOperator rho_hbar(const TransformField& f, double hbar, const BasisPtr& basis);

/// One-coordinate block of rho_hbar for a single factor, cutoff x cutoff.
Mat rho_hbar_1d(const Factor1D& f, double hbar, int cutoff, double length, int quad_nodes = 0);

/// (f1 *_H f2)(x, y) = (2 pi)^{-n} int f1(x, z) f2(x + hbar z, y - z) dz.
/// At hbar = 0 with test-function inputs this is the exact transform of f1 f2.
TransformField star_H(const TestFunction& f1, const TestFunction& f2, double hbar, int nodes = 0);
TransformField star_H(const TransformField& f1, const TransformField& f2, double hbar,
                      int nodes = 0);

/// delta_{2j-1} = [d/dx_j, .], delta_{2j} = [x_j, .], j = 1..n.
DeformedOperator derivation_delta(int j, const DeformedOperator& t);
/// Derivation along a direction v in x (kind 'x' uses d/dx, kind 'xi' uses x).
Mat derivation_along(const HermiteBasis& basis, const Vec& v, bool momentum, const Mat& t);

/// Logarithm X of an orthogonal g with det 1, X skew and exp(X) = g.
RMat orthogonal_log(const RMat& g);

/// Matrix of (g phi)(x) = phi(g^{-1} x), built level by level as exp of the
/// number-conserving generator sum X_jk a_j^+ a_k. Exact for TotalDegree;
/// a compression of the exact level blocks for Tensor.
Mat group_rep_matrix(const IsometryAction& a, const HermiteBasis& basis);
Mat group_rep_matrix(const RMat& g, const HermiteBasis& basis);

/// Projects t onto operators commuting with ghat: averaging over the cyclic
/// group when ghat has finite order, otherwise masking in ghat's eigenbasis.
Mat g_average(const Mat& t, const Mat& ghat, double cluster_tol = 1e-8);

/// ((-1)^{n_g} / n_g!) sum_s sgn(s) Tr(ghat T0 delta_{s1}(T1) ... ), with
/// derivations along the fixed directions of g. Reduces to Tr(ghat T0) when
/// n_g = 0. An empty ghat means the identity.
cplx omega_g(const IsometryAction& a, const Mat& ghat, const std::vector<DeformedOperator>& ts);

struct TraceFormulaValue {
  cplx lhs;
  cplx rhs;
  double rhs_error = 0.0;
};

/// lhs = Tr(rho_hbar(fhat) ghat), rhs = (hbar 2 pi)^{-n} int fhat(x, (gx - x)/hbar) dx.
TraceFormulaValue equivariant_trace_formula(const TestFunction& f, double hbar,
                                            const IsometryAction& a, const BasisPtr& basis,
                                            const QuadratureConfig& q,
                                            const Mat& ghat = Mat());

struct ConvergenceRow {
  double hbar = 0.0;
  int cutoff = 0;
  cplx lhs;
  cplx target;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double seconds = 0.0;
  std::string warning;
};

struct ConvergenceTable {
  std::string kind;
  std::vector<ConvergenceRow> rows;
  bool monotone = true;

  std::string to_csv() const;
};

struct LengthRule {
  /// length = scale * sqrt(hbar) when sqrt_hbar, else length = scale.
  bool sqrt_hbar = true;
  double scale = 1.0;

  double operator()(double hbar) const;
};

struct LimitExperiment {
  IsometryAction action;
  std::vector<TestFunction> functions;
  std::vector<double> hbar;
  std::vector<int> cutoffs;
  Truncation truncation = Truncation::Tensor;
  LengthRule length;
  int quad_nodes = 0;
  EpsilonOptions target_options;
  std::optional<cplx> target;
  /// Averages operators over g when they fail to commute with ghat.
  bool average = true;
};

/// Rows (hbar, N, omega_g, epsilon_g target, errors); monotone when the
/// absolute error decreases strictly along the schedule.
ConvergenceTable semiclassical_limit_experiment(const LimitExperiment& e);

struct TraceFormulaExperiment {
  IsometryAction action;
  TestFunction function = TestFunction::zero(1);
  std::vector<double> hbar;  // one value, or one per cutoff
  std::vector<int> cutoffs;
  Truncation truncation = Truncation::Tensor;
  LengthRule length{false, 1.0};
  int quad_nodes = 0;
  QuadratureConfig quadrature;
};

ConvergenceTable trace_formula_experiment(const TraceFormulaExperiment& e);

struct PairingValue {
  cplx pairing;
  cplx trace;
};

/// <[T], [(2 pi i)^n n! omega]> next to Tr(T), for an idempotent T at g = I.
PairingValue idempotent_trace_pairing(const DeformedOperator& t, int n);

/// Projector onto span(psi_k, k in modes) of the given basis.
DeformedOperator basis_projector(const BasisPtr& basis, const std::vector<int>& modes);

}  // namespace equivix
