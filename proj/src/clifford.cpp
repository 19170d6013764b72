#include "equivix/clifford.hpp"

#include <algorithm>
#include <bit>

#include "equivix/error.hpp"
#include "equivix/linalg.hpp"

namespace equivix {

namespace {

// 2^{2n} monomials must fit comfortably in memory as dense matrices.
constexpr int kMaxHalfDimension = 6;

bool basis_less(std::uint32_t a, std::uint32_t b) {
  const int pa = std::popcount(a) % 2;
  const int pb = std::popcount(b) % 2;
  if (pa != pb) return pa < pb;
  const int da = std::popcount(a);
  const int db = std::popcount(b);
  if (da != db) return da < db;
  // Lexicographic on ascending index lists: compare lowest differing generator.
  const std::uint32_t diff = a ^ b;
  const int low = std::countr_zero(diff);
  return (a >> low) & 1u;
}

}  // namespace

CliffordAlgebra::CliffordAlgebra(int n_half) : n_half_(n_half) {
  if (n_half < 1 || n_half > kMaxHalfDimension) {
    throw Error(ErrorCode::InvalidDimension,
                "clifford: n_half must be in [1, " +
                    std::to_string(kMaxHalfDimension) + "], got " +
                    std::to_string(n_half));
  }
  const std::uint32_t count = 1u << (2 * n_half);
  basis_.resize(count);
  for (std::uint32_t m = 0; m < count; ++m) basis_[m] = m;
  std::sort(basis_.begin(), basis_.end(), basis_less);
  position_.assign(count, -1);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    position_[basis_[k]] = static_cast<int>(k);
  }
}

int CliffordAlgebra::index_of(std::uint32_t mask) const {
  if (mask >= position_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "clifford: monomial out of range");
  }
  return position_[mask];
}

std::string CliffordAlgebra::label(int k) const {
  const std::uint32_t m = monomial(k);
  if (m == 0) return "1";
  std::string out;
  for (int i = 0; i < generators(); ++i) {
    if ((m >> i) & 1u) out += "e" + std::to_string(i + 1);
  }
  return out;
}

int CliffordAlgebra::degree(std::uint32_t mask) { return std::popcount(mask); }

int CliffordAlgebra::product_sign(std::uint32_t a, std::uint32_t b) {
  // Count transpositions needed to sort the concatenated index list; every
  // generator of a must pass the generators of b with a smaller index.
  int swaps = 0;
  std::uint32_t rest = a >> 1;
  while (rest != 0) {
    swaps += std::popcount(rest & b);
    rest >>= 1;
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

void CliffordAlgebra::check_generator(int i) const {
  if (i < 1 || i > generators()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "clifford: generator index " + std::to_string(i) +
                    " outside [1, " + std::to_string(generators()) + "]");
  }
}

Mat CliffordAlgebra::left_mult(int i) const {
  check_generator(i);
  const std::uint32_t gen = 1u << (i - 1);
  Mat out = Mat::Zero(dim(), dim());
  for (int col = 0; col < dim(); ++col) {
    const std::uint32_t w = basis_[col];
    out(position_[gen ^ w], col) = product_sign(gen, w);
  }
  return out;
}

Mat CliffordAlgebra::twisted_right_mult(int i) const {
  check_generator(i);
  const std::uint32_t gen = 1u << (i - 1);
  Mat out = Mat::Zero(dim(), dim());
  for (int col = 0; col < dim(); ++col) {
    const std::uint32_t w = basis_[col];
    const int parity = (degree(w) % 2 == 0) ? 1 : -1;
    out(position_[w ^ gen], col) = parity * product_sign(w, gen);
  }
  return out;
}

Mat CliffordAlgebra::so_action(const RMat& g) const {
  const int n = generators();
  if (g.rows() != n || g.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "clifford: group element must be " + std::to_string(n) + "x" +
                    std::to_string(n));
  }
  if (!is_orthogonal(g, 1e-10)) {
    throw Error(ErrorCode::Precondition,
                "clifford: so_action requires an orthogonal matrix");
  }
  Mat out = Mat::Zero(dim(), dim());
  for (int col = 0; col < dim(); ++col) {
    const std::uint32_t w = basis_[col];
    CliffordElement image = CliffordElement::scalar(*this, 1.0);
    for (int i = 0; i < n; ++i) {
      if ((w >> i) & 1u) {
        image = image * CliffordElement::vector(*this, g.col(i));
      }
    }
    out.col(col) = image.coefficients();
  }
  return out;
}

Mat CliffordAlgebra::grading() const {
  Mat out = Mat::Identity(dim(), dim());
  for (int k = even_dim(); k < dim(); ++k) out(k, k) = -1.0;
  return out;
}

CliffordElement::CliffordElement(const CliffordAlgebra& alg, CVec coeffs)
    : alg_(&alg), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != alg.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "clifford: coefficient vector has wrong length");
  }
}

CliffordElement CliffordElement::scalar(const CliffordAlgebra& alg,
                                        cplx value) {
  CVec c = CVec::Zero(alg.dim());
  c(alg.index_of(0)) = value;
  return CliffordElement(alg, std::move(c));
}

CliffordElement CliffordElement::vector(const CliffordAlgebra& alg,
                                        const Vec& v) {
  if (v.size() != alg.generators()) {
    throw Error(ErrorCode::DimensionMismatch,
                "clifford: vector has wrong dimension");
  }
  CVec c = CVec::Zero(alg.dim());
  for (int i = 0; i < alg.generators(); ++i) {
    c(alg.index_of(1u << i)) = v(i);
  }
  return CliffordElement(alg, std::move(c));
}

CliffordElement CliffordElement::operator*(const CliffordElement& rhs) const {
  const CliffordAlgebra& alg = *alg_;
  CVec out = CVec::Zero(alg.dim());
  for (int a = 0; a < alg.dim(); ++a) {
    if (coeffs_(a) == cplx(0.0)) continue;
    const std::uint32_t ma = alg.monomial(a);
    for (int b = 0; b < alg.dim(); ++b) {
      if (rhs.coeffs_(b) == cplx(0.0)) continue;
      const std::uint32_t mb = alg.monomial(b);
      out(alg.index_of(ma ^ mb)) +=
          static_cast<double>(CliffordAlgebra::product_sign(ma, mb)) *
          coeffs_(a) * rhs.coeffs_(b);
    }
  }
  return CliffordElement(alg, std::move(out));
}

CliffordElement CliffordElement::operator+(const CliffordElement& rhs) const {
  return CliffordElement(*alg_, coeffs_ + rhs.coeffs_);
}

CliffordElement CliffordElement::grading_involution() const {
  return CliffordElement(*alg_, alg_->grading() * coeffs_);
}

CliffordElement CliffordElement::even_part() const {
  CVec c = coeffs_;
  c.tail(alg_->dim() - alg_->even_dim()).setZero();
  return CliffordElement(*alg_, std::move(c));
}

CliffordElement CliffordElement::odd_part() const {
  CVec c = coeffs_;
  c.head(alg_->even_dim()).setZero();
  return CliffordElement(*alg_, std::move(c));
}

CliffordAlgebra clifford_basis(int n_half) { return CliffordAlgebra(n_half); }

Mat left_mult_matrix(const CliffordAlgebra& alg, int i) {
  return alg.left_mult(i);
}

Mat twisted_right_mult_matrix(const CliffordAlgebra& alg, int i) {
  return alg.twisted_right_mult(i);
}

Mat so_action_matrix(const CliffordAlgebra& alg, const RMat& g) {
  return alg.so_action(g);
}

}  // namespace equivix
