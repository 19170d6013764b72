#pragma once

#include <string>
#include <vector>

#include "equivix/types.hpp"

namespace equivix {

/// g in SO(n) together with its fiber representations and fixed-space data.
///
/// Columns 0..n_g-1 of q span the fixed space (R^n)^g, the remaining
/// columns its orthogonal complement, so q^T g q = I_{n_g} (+) h.
struct IsometryAction {
  RMat g;
  Mat rep_v;
  Mat rep_w;
  int n_g = 0;
  RMat q;
  double det_normal = 1.0;
  std::string description;

  int n() const { return static_cast<int>(g.rows()); }
  /// diag(rep_v, rep_w).
  Mat fiber_matrix() const;
  RMat fixed_basis() const { return q.leftCols(n_g); }
  RMat normal_basis() const { return q.rightCols(n() - n_g); }
  /// h = q_N^T g q_N.
  RMat normal_block() const;
};

struct IsometryOptions {
  double fixed_tol = 1e-9;
  double unitary_tol = 1e-10;
  double orthogonal_tol = 1e-10;
};

/// Fixed space by SVD of g - I. Singular values <= tol count as fixed;
/// values in (tol, sqrt(tol)] are neither clearly fixed nor clearly moved
/// and raise IllConditioned.
IsometryAction analyze_isometry(const RMat& g, const Mat& rep_v,
                                const Mat& rep_w, IsometryOptions opts = {});

/// (g^{-1} x, g^{-1} xi) for z = (x, xi).
Vec phase_space_pullback(const IsometryAction& a, const Vec& z);
Vec phase_space_pullback(const RMat& g, const Vec& z);

/// Embeds w = (u, eta) in T*(R^n)^g as z = (Q_F u, Q_F eta).
Vec embed_fixed_point(const IsometryAction& a, const Vec& w);

/// Tangential directions ordered (u1, eta1, u2, eta2, ...) in phase space.
std::vector<Vec> fixed_directions(const IsometryAction& a);

RMat rotation_matrix(double theta);
/// Block-diagonal 2x2 rotations; n = 2 * thetas.size().
RMat block_rotation(const std::vector<double>& thetas);

struct GroupSpec {
  RMat g;
  std::string description;
};

/// "identity", "rotation:t", "blockrot:t1,t2,..." or a JSON file holding
/// {"matrix": [[...], ...]}. n is the base dimension the result must have.
GroupSpec parse_group_spec(const std::string& text, int n);

}  // namespace equivix
