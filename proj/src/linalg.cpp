#include "equivix/linalg.hpp"

namespace equivix {

bool is_orthogonal(const RMat& g, double tol) {
  if (g.rows() != g.cols()) return false;
  const RMat defect = g.transpose() * g - RMat::Identity(g.rows(), g.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  if (u.rows() == 0) return true;
  const Mat defect = u.adjoint() * u - Mat::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

double relative_frobenius(const Mat& a, const Mat& b) {
  const double diff = (a - b).norm();
  const double ref = b.norm();
  return ref > 0.0 ? diff / ref : diff;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

cplx trace_of_product(const Mat& a, const Mat& b) {
  // tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace equivix
