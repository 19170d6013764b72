#pragma once

#include "equivix/types.hpp"

namespace equivix {

bool is_orthogonal(const RMat& g, double tol);
bool is_unitary(const Mat& u, double tol);

/// ||a - b||_F / ||b||_F, falling back to the absolute norm when b vanishes.
double relative_frobenius(const Mat& a, const Mat& b);

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// diag(a, b) with zero off-diagonal blocks.
Mat block_diag(const Mat& a, const Mat& b);

/// Sum of a * b's diagonal without forming the product.
cplx trace_of_product(const Mat& a, const Mat& b);

}  // namespace equivix
