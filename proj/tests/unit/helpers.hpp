#pragma once

#include <random>

#include "equivix/types.hpp"

namespace equivix::testing {

inline Vec random_vec(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

// Haar-ish rotation: QR of a Gaussian matrix, determinant forced to +1.
inline RMat random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  RMat q = Eigen::HouseholderQR<RMat>(m).householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace equivix::testing
