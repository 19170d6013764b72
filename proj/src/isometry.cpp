#include "equivix/isometry.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "equivix/error.hpp"
#include "equivix/linalg.hpp"

namespace equivix {

Mat IsometryAction::fiber_matrix() const { return block_diag(rep_v, rep_w); }

RMat IsometryAction::normal_block() const {
  const RMat qn = normal_basis();
  return qn.transpose() * g * qn;
}

namespace {

// Flip each column so its largest-magnitude entry is positive.
void normalize_signs(RMat& q) {
  for (int c = 0; c < q.cols(); ++c) {
    Eigen::Index r = 0;
    q.col(c).cwiseAbs().maxCoeff(&r);
    if (q(r, c) < 0.0) q.col(c) *= -1.0;
  }
}

}  // namespace

IsometryAction analyze_isometry(const RMat& g, const Mat& rep_v,
                                const Mat& rep_w, IsometryOptions opts) {
  const int n = static_cast<int>(g.rows());
  if (n < 1 || g.cols() != n) {
    throw Error(ErrorCode::InvalidDimension, "isometry: g must be square and nonempty");
  }
  if (!is_orthogonal(g, opts.orthogonal_tol)) {
    throw Error(ErrorCode::Precondition, "isometry: g is not orthogonal");
  }
  if (std::abs(g.determinant() - 1.0) > 1e-8) {
    throw Error(ErrorCode::Precondition,
                "isometry: det(g) != 1; only orientation-preserving isometries are supported");
  }
  if (rep_v.rows() != rep_v.cols() || rep_w.rows() != rep_w.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "isometry: fiber reps must be square");
  }
  if (!is_unitary(rep_v, opts.unitary_tol) || !is_unitary(rep_w, opts.unitary_tol)) {
    throw Error(ErrorCode::Precondition, "isometry: fiber reps are not unitary");
  }

  const RMat shifted = g - RMat::Identity(n, n);
  Eigen::JacobiSVD<RMat> svd(shifted, Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  const double loose = std::sqrt(opts.fixed_tol);
  std::vector<int> fixed;
  for (int k = 0; k < n; ++k) {
    if (sv(k) <= opts.fixed_tol) {
      fixed.push_back(k);
    } else if (sv(k) <= loose) {
      throw Error(ErrorCode::IllConditioned,
                  "isometry: eigenvalue near 1 (singular value " +
                      std::to_string(sv(k)) + ") is not fixed to tolerance");
    }
  }

  IsometryAction out;
  out.g = g;
  out.rep_v = rep_v;
  out.rep_w = rep_w;
  out.n_g = static_cast<int>(fixed.size());

  if (out.n_g == 0) {
    out.q = RMat::Identity(n, n);
  } else {
    RMat vf(n, out.n_g);
    for (int k = 0; k < out.n_g; ++k) vf.col(k) = svd.matrixV().col(fixed[k]);
    // Pivoted QR of the projector picks coordinate-aligned columns first, so
    // an axis-aligned fixed space comes back axis-aligned.
    const RMat proj = vf * vf.transpose();
    Eigen::ColPivHouseholderQR<RMat> qr(proj);
    RMat q = qr.householderQ() * RMat::Identity(n, n);
    // Re-orthogonalize the fixed block against the exact null space.
    RMat qf = proj * q.leftCols(out.n_g);
    Eigen::HouseholderQR<RMat> qr_f(qf);
    RMat basis = qr_f.householderQ() * RMat::Identity(n, n);
    normalize_signs(basis);
    out.q = basis;
  }
  if (out.n_g == n) {
    out.det_normal = 1.0;
  } else {
    const RMat qn = out.normal_basis();
    out.det_normal =
        (qn.transpose() * shifted * qn).determinant();
  }
  return out;
}

Vec phase_space_pullback(const RMat& g, const Vec& z) {
  const int n = static_cast<int>(g.rows());
  if (z.size() != 2 * n) {
    throw Error(ErrorCode::DimensionMismatch, "pullback: phase point has wrong length");
  }
  Vec out(2 * n);
  // g is orthogonal, so g^{-1} = g^T.
  out.head(n) = g.transpose() * z.head(n);
  out.tail(n) = g.transpose() * z.tail(n);
  return out;
}

Vec phase_space_pullback(const IsometryAction& a, const Vec& z) {
  return phase_space_pullback(a.g, z);
}

Vec embed_fixed_point(const IsometryAction& a, const Vec& w) {
  if (w.size() != 2 * a.n_g) {
    throw Error(ErrorCode::DimensionMismatch, "embed: point must have length 2 n_g");
  }
  const RMat qf = a.fixed_basis();
  Vec z(2 * a.n());
  z.head(a.n()) = qf * w.head(a.n_g);
  z.tail(a.n()) = qf * w.tail(a.n_g);
  return z;
}

std::vector<Vec> fixed_directions(const IsometryAction& a) {
  const int n = a.n();
  std::vector<Vec> dirs;
  for (int j = 0; j < a.n_g; ++j) {
    Vec dx = Vec::Zero(2 * n);
    dx.head(n) = a.q.col(j);
    Vec dxi = Vec::Zero(2 * n);
    dxi.tail(n) = a.q.col(j);
    dirs.push_back(dx);
    dirs.push_back(dxi);
  }
  return dirs;
}

RMat rotation_matrix(double theta) {
  RMat r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

RMat block_rotation(const std::vector<double>& thetas) {
  const int n = 2 * static_cast<int>(thetas.size());
  RMat g = RMat::Zero(n, n);
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    g.block(2 * k, 2 * k, 2, 2) = rotation_matrix(thetas[k]);
  }
  return g;
}

namespace {

double parse_angle(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Parse, "group spec: bad angle '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::Parse, "group spec: bad angle '" + s + "'");
  return v;
}

}  // namespace

GroupSpec parse_group_spec(const std::string& text, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidDimension, "group spec: n < 1");
  GroupSpec out;
  out.description = text;
  if (text == "identity") {
    out.g = RMat::Identity(n, n);
  } else if (text.rfind("rotation:", 0) == 0) {
    const double theta = parse_angle(text.substr(9));
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "rotation needs n >= 2");
    out.g = RMat::Identity(n, n);
    out.g.topLeftCorner(2, 2) = rotation_matrix(theta);
  } else if (text.rfind("blockrot:", 0) == 0) {
    std::vector<double> thetas;
    std::stringstream ss(text.substr(9));
    std::string item;
    while (std::getline(ss, item, ',')) thetas.push_back(parse_angle(item));
    if (thetas.empty() || 2 * static_cast<int>(thetas.size()) > n) {
      throw Error(ErrorCode::InvalidDimension,
                  "blockrot: need 1..n/2 angles for n = " + std::to_string(n));
    }
    out.g = RMat::Identity(n, n);
    const RMat b = block_rotation(thetas);
    out.g.topLeftCorner(b.rows(), b.cols()) = b;
  } else if (std::filesystem::exists(text)) {
    std::ifstream in(text);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::Parse, "group file " + text + ": " + e.what());
    }
    const auto rows = j.at("matrix");
    if (static_cast<int>(rows.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "group file " + text + ": expected " + std::to_string(n) + " rows");
    }
    out.g.resize(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(rows[r].size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "group file: ragged matrix");
      }
      for (int c = 0; c < n; ++c) out.g(r, c) = rows[r][c].get<double>();
    }
    out.description = j.value("description", text);
  } else {
    throw Error(ErrorCode::Parse, "unrecognized group element '" + text + "'");
  }
  return out;
}

}  // namespace equivix
