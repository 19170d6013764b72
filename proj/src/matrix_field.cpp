#include "equivix/matrix_field.hpp"

#include "equivix/error.hpp"

namespace equivix {

Mat MatrixField::value(const Vec& z) const { return jet(z, {}).value; }

Mat MatrixField::partial(const Vec& z, int coordinate) const {
  if (coordinate < 0 || coordinate >= phase_dim) {
    throw Error(ErrorCode::IndexOutOfRange, "field: coordinate out of range");
  }
  return jet(z, {Vec::Unit(phase_dim, coordinate)}).partials.front();
}

MatrixField constant_field(int phase_dim, const Mat& m) {
  MatrixField f;
  f.phase_dim = phase_dim;
  f.size = static_cast<int>(m.rows());
  f.name = "constant";
  f.jet = [m](const Vec&, const std::vector<Vec>& dirs) {
    Jet j{m, {}};
    j.partials.assign(dirs.size(), Mat::Zero(m.rows(), m.cols()));
    return j;
  };
  return f;
}

MatrixField scale_field(const MatrixField& f, cplx s) {
  MatrixField out = f;
  out.jet = [inner = f.jet, s](const Vec& z, const std::vector<Vec>& dirs) {
    Jet j = inner(z, dirs);
    j.value *= s;
    for (auto& p : j.partials) p *= s;
    return j;
  };
  return out;
}

MatrixField operator*(const MatrixField& a, const MatrixField& b) {
  if (a.phase_dim != b.phase_dim || a.size != b.size) {
    throw Error(ErrorCode::DimensionMismatch, "field product: shape mismatch");
  }
  MatrixField out;
  out.phase_dim = a.phase_dim;
  out.size = a.size;
  out.name = "(" + a.name + ")*(" + b.name + ")";
  out.jet = [ja = a.jet, jb = b.jet](const Vec& z, const std::vector<Vec>& dirs) {
    const Jet x = ja(z, dirs);
    const Jet y = jb(z, dirs);
    Jet j{x.value * y.value, {}};
    j.partials.reserve(dirs.size());
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      j.partials.push_back(x.partials[k] * y.value + x.value * y.partials[k]);
    }
    return j;
  };
  return out;
}

MatrixField operator+(const MatrixField& a, const MatrixField& b) {
  if (a.phase_dim != b.phase_dim || a.size != b.size) {
    throw Error(ErrorCode::DimensionMismatch, "field sum: shape mismatch");
  }
  MatrixField out;
  out.phase_dim = a.phase_dim;
  out.size = a.size;
  out.name = a.name + "+" + b.name;
  out.jet = [ja = a.jet, jb = b.jet](const Vec& z, const std::vector<Vec>& dirs) {
    Jet x = ja(z, dirs);
    const Jet y = jb(z, dirs);
    x.value += y.value;
    for (std::size_t k = 0; k < dirs.size(); ++k) x.partials[k] += y.partials[k];
    return x;
  };
  return out;
}

std::vector<Vec> coordinate_directions(int phase_dim) {
  std::vector<Vec> out;
  for (int k = 0; k < phase_dim; ++k) out.push_back(Vec::Unit(phase_dim, k));
  return out;
}

}  // namespace equivix
