#pragma once

#include <string>
#include <vector>

#include <Eigen/SparseCore>
#include <nlohmann/json.hpp>

#include "equivix/types.hpp"

namespace equivix {

using SparseR = Eigen::SparseMatrix<double>;

enum class Truncation { Tensor, TotalDegree };
Truncation parse_truncation(const std::string& s);
std::string to_string(Truncation t);

/// Truncated Hermite basis of L^2(R^n) with scaled functions
/// psi_k^l(x) = l^{-1/2} psi_k(x / l).
///
/// Tensor keeps multi-indices with every entry < cutoff; TotalDegree keeps
/// those with |m| <= cutoff - 1, which is a union of whole oscillator levels.
struct HermiteBasisConfig {
  int n = 1;
  int cutoff = 40;
  double length = 1.0;
  Truncation truncation = Truncation::Tensor;
  /// Gauss-Legendre nodes per coordinate for matrix elements; 0 picks a
  /// count from cutoff, length and the integrand's width.
  int quad_nodes = 0;

  void validate() const;
  nlohmann::json to_json() const;
};

class HermiteBasis {
 public:
  explicit HermiteBasis(HermiteBasisConfig cfg);

  const HermiteBasisConfig& config() const { return cfg_; }
  int n() const { return cfg_.n; }
  int cutoff() const { return cfg_.cutoff; }
  double length() const { return cfg_.length; }
  int dim() const { return static_cast<int>(indices_.size()); }
  const std::vector<int>& multi_index(int k) const { return indices_.at(k); }
  /// -1 when the multi-index is not kept.
  int index_of(const std::vector<int>& m) const;
  int level(int k) const;
  int max_level() const;

  /// Matrices of x_d and d/dx_d (d zero-based), exact ladder form truncated.
  const SparseR& ladder_x(int d) const { return x_.at(d); }
  const SparseR& ladder_dx(int d) const { return dx_.at(d); }
  /// Diagonal 0/1 projector onto oscillator level L.
  Vec level_projector(int L) const;

  /// Basis matrix of a separable operator: entry (i, j) = prod_d m[d](i_d, j_d).
  Mat lift(const std::vector<Mat>& per_coordinate) const;

 private:
  HermiteBasisConfig cfg_;
  std::vector<std::vector<int>> indices_;
  std::vector<int> lookup_;  // tensor position -> basis index or -1
  std::vector<SparseR> x_;
  std::vector<SparseR> dx_;
};

/// psi_k^l at the given points, rows k = 0..count-1.
RMat hermite_functions(int count, const Eigen::Ref<const Vec>& x, double length);
RMat ladder_x_1d(int count, double length);
RMat ladder_dx_1d(int count, double length);

}  // namespace equivix
