#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equivix/types.hpp"

namespace equivix {

/// Complex Clifford algebra of R^{2n} with relation x x = +|x|^2.
///
/// Monomials e_{i1}...e_{ik} (i1 < ... < ik) are stored as bitmasks, bit
/// (i-1) standing for generator e_i. The basis is ordered even block first,
/// then odd block; inside a block by degree and then lexicographically on the
/// index set. For n_half = 1 this gives (1, e1e2 | e1, e2).
///
/// Under this sign convention c(e_i)^2 = +I while the twisted right
/// multiplication satisfies chat(e_i)^2 = -I.
class CliffordAlgebra {
 public:
  explicit CliffordAlgebra(int n_half);

  int n_half() const { return n_half_; }
  int generators() const { return 2 * n_half_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int even_dim() const { return dim() / 2; }

  const std::vector<std::uint32_t>& basis() const { return basis_; }
  std::uint32_t monomial(int k) const { return basis_.at(k); }
  int index_of(std::uint32_t mask) const;
  std::string label(int k) const;

  /// Sign of the monomial product a * b (both already in ascending order).
  static int product_sign(std::uint32_t a, std::uint32_t b);
  static int degree(std::uint32_t mask);

  /// Matrix of c(e_i): w -> e_i w. Index i is 1-based.
  Mat left_mult(int i) const;
  /// Matrix of chat(e_i): w -> (-1)^{deg w} w e_i. Index i is 1-based.
  Mat twisted_right_mult(int i) const;
  /// Algebra-automorphism extension of an orthogonal g on R^{2n}.
  Mat so_action(const RMat& g) const;
  /// +1 on the even block, -1 on the odd block.
  Mat grading() const;

 private:
  void check_generator(int i) const;

  int n_half_;
  std::vector<std::uint32_t> basis_;
  std::vector<int> position_;  // mask -> basis index
};

/// A coefficient vector over the graded monomial basis.
class CliffordElement {
 public:
  CliffordElement(const CliffordAlgebra& alg, CVec coeffs);

  static CliffordElement scalar(const CliffordAlgebra& alg, cplx value);
  /// The vector sum_i v_i e_i for v in R^{2n}.
  static CliffordElement vector(const CliffordAlgebra& alg, const Vec& v);

  const CliffordAlgebra& algebra() const { return *alg_; }
  const CVec& coefficients() const { return coeffs_; }

  CliffordElement operator*(const CliffordElement& rhs) const;
  CliffordElement operator+(const CliffordElement& rhs) const;
  CliffordElement grading_involution() const;
  CliffordElement even_part() const;
  CliffordElement odd_part() const;

 private:
  const CliffordAlgebra* alg_;
  CVec coeffs_;
};

CliffordAlgebra clifford_basis(int n_half);
Mat left_mult_matrix(const CliffordAlgebra& alg, int i);
Mat twisted_right_mult_matrix(const CliffordAlgebra& alg, int i);
Mat so_action_matrix(const CliffordAlgebra& alg, const RMat& g);

}  // namespace equivix
