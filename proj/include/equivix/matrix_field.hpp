#pragma once

#include <functional>
#include <string>
#include <vector>

#include "equivix/types.hpp"

namespace equivix {

/// Value and directional derivatives of a matrix function at one point.
struct Jet {
  Mat value;
  std::vector<Mat> partials;  // one per requested direction
};

/// Smooth matrix-valued function on phase space R^{phase_dim}.
///
/// `jet(z, dirs)` returns the value at z and the derivative along each
/// direction vector in dirs (each of length phase_dim).
struct MatrixField {
  int phase_dim = 0;
  int size = 0;
  std::string name;
  std::function<Jet(const Vec&, const std::vector<Vec>&)> jet;

  Mat value(const Vec& z) const;
  Mat partial(const Vec& z, int coordinate) const;
};

MatrixField constant_field(int phase_dim, const Mat& m);
MatrixField scale_field(const MatrixField& f, cplx s);
/// Pointwise product with the Leibniz rule for derivatives.
MatrixField operator*(const MatrixField& a, const MatrixField& b);
MatrixField operator+(const MatrixField& a, const MatrixField& b);

std::vector<Vec> coordinate_directions(int phase_dim);

}  // namespace equivix
