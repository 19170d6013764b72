#pragma once

#include <complex>

#include <Eigen/Dense>

namespace equivix {

using cplx = std::complex<double>;

/// Dense complex matrix; every fiber-valued quantity lives here.
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
/// Real matrices are used for group elements and ladder operators.
using RMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

}  // namespace equivix
