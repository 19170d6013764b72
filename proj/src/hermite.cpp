#include "equivix/hermite.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "equivix/error.hpp"

namespace equivix {

Truncation parse_truncation(const std::string& s) {
  if (s == "tensor") return Truncation::Tensor;
  if (s == "total_degree" || s == "total-degree") return Truncation::TotalDegree;
  throw Error(ErrorCode::Parse, "unknown truncation '" + s + "' (tensor|total_degree)");
}

std::string to_string(Truncation t) {
  return t == Truncation::Tensor ? "tensor" : "total_degree";
}

void HermiteBasisConfig::validate() const {
  if (n < 1 || n > 4) throw Error(ErrorCode::InvalidDimension, "hermite: n must be in [1, 4]");
  if (cutoff < 4) throw Error(ErrorCode::Precondition, "hermite: cutoff N must be >= 4");
  if (!(length > 0.0)) throw Error(ErrorCode::Precondition, "hermite: length must be positive");
  if (quad_nodes < 0) throw Error(ErrorCode::Precondition, "hermite: quad_nodes must be >= 0");
}

nlohmann::json HermiteBasisConfig::to_json() const {
  return {{"n", n},
          {"cutoff", cutoff},
          {"length", length},
          {"truncation", to_string(truncation)},
          {"quad_nodes", quad_nodes}};
}

RMat hermite_functions(int count, const Eigen::Ref<const Vec>& x, double length) {
  const Eigen::Index m = x.size();
  RMat psi(count, m);
  const Eigen::ArrayXd t = x.array() / length;
  const double norm0 = std::pow(kPi, -0.25) / std::sqrt(length);
  psi.row(0) = (norm0 * (-0.5 * t * t).exp()).matrix().transpose();
  if (count > 1) psi.row(1) = (std::sqrt(2.0) * t.transpose() * psi.row(0).array()).matrix();
  for (int k = 1; k + 1 < count; ++k) {
    psi.row(k + 1) = (std::sqrt(2.0 / (k + 1)) * t.transpose() * psi.row(k).array() -
                      std::sqrt(static_cast<double>(k) / (k + 1)) * psi.row(k - 1).array())
                         .matrix();
  }
  return psi;
}

RMat ladder_x_1d(int count, double length) {
  RMat x = RMat::Zero(count, count);
  for (int k = 0; k + 1 < count; ++k) {
    const double v = length * std::sqrt((k + 1) / 2.0);
    x(k, k + 1) = v;
    x(k + 1, k) = v;
  }
  return x;
}

RMat ladder_dx_1d(int count, double length) {
  RMat d = RMat::Zero(count, count);
  for (int k = 0; k + 1 < count; ++k) {
    const double v = std::sqrt((k + 1) / 2.0) / length;
    d(k, k + 1) = v;
    d(k + 1, k) = -v;
  }
  return d;
}

HermiteBasis::HermiteBasis(HermiteBasisConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  const int n = cfg_.n;
  const int N = cfg_.cutoff;
  long long total = 1;
  for (int d = 0; d < n; ++d) total *= N;
  lookup_.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> m(n, 0);
  // Enumerate multi-indices by level, then lexicographically, so that each
  // oscillator level occupies a contiguous block.
  const int top = cfg_.truncation == Truncation::Tensor ? n * (N - 1) : N - 1;
  for (int L = 0; L <= top; ++L) {
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int d, int remaining) {
      if (d == n - 1) {
        if (remaining >= N) return;
        cur[d] = remaining;
        long long pos = 0;
        for (int e = 0; e < n; ++e) pos = pos * N + cur[e];
        lookup_[pos] = static_cast<int>(indices_.size());
        indices_.push_back(cur);
        return;
      }
      for (int v = std::min(remaining, N - 1); v >= 0; --v) {
        cur[d] = v;
        rec(d + 1, remaining - v);
      }
    };
    rec(0, L);
  }
  const RMat x1 = ladder_x_1d(N, cfg_.length);
  const RMat d1 = ladder_dx_1d(N, cfg_.length);
  const int dim = static_cast<int>(indices_.size());
  for (int d = 0; d < n; ++d) {
    std::vector<Eigen::Triplet<double>> tx;
    std::vector<Eigen::Triplet<double>> td;
    for (int col = 0; col < dim; ++col) {
      for (int step : {-1, 1}) {
        std::vector<int> target = indices_[col];
        target[d] += step;
        if (target[d] < 0 || target[d] >= N) continue;
        const int row = index_of(target);
        if (row < 0) continue;
        tx.emplace_back(row, col, x1(target[d], indices_[col][d]));
        td.emplace_back(row, col, d1(target[d], indices_[col][d]));
      }
    }
    SparseR sx(dim, dim);
    SparseR sd(dim, dim);
    sx.setFromTriplets(tx.begin(), tx.end());
    sd.setFromTriplets(td.begin(), td.end());
    x_.push_back(std::move(sx));
    dx_.push_back(std::move(sd));
  }
}

int HermiteBasis::index_of(const std::vector<int>& m) const {
  if (static_cast<int>(m.size()) != cfg_.n) return -1;
  long long pos = 0;
  for (int v : m) {
    if (v < 0 || v >= cfg_.cutoff) return -1;
    pos = pos * cfg_.cutoff + v;
  }
  return lookup_[static_cast<std::size_t>(pos)];
}

int HermiteBasis::level(int k) const {
  const auto& m = indices_.at(k);
  return std::accumulate(m.begin(), m.end(), 0);
}

int HermiteBasis::max_level() const { return level(dim() - 1); }

Vec HermiteBasis::level_projector(int L) const {
  Vec p = Vec::Zero(dim());
  for (int k = 0; k < dim(); ++k) {
    if (level(k) == L) p(k) = 1.0;
  }
  return p;
}

Mat HermiteBasis::lift(const std::vector<Mat>& per_coordinate) const {
  if (static_cast<int>(per_coordinate.size()) != cfg_.n) {
    throw Error(ErrorCode::DimensionMismatch, "lift: need one matrix per coordinate");
  }
  for (const Mat& m : per_coordinate) {
    if (m.rows() != cfg_.cutoff || m.cols() != cfg_.cutoff) {
      throw Error(ErrorCode::DimensionMismatch, "lift: factors must be cutoff x cutoff");
    }
  }
  if (cfg_.n == 1) return per_coordinate[0];
  const int dim = this->dim();
  Mat out(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const auto& mj = indices_[j];
    for (int i = 0; i < dim; ++i) {
      const auto& mi = indices_[i];
      cplx v = per_coordinate[0](mi[0], mj[0]);
      for (int d = 1; d < cfg_.n; ++d) v *= per_coordinate[d](mi[d], mj[d]);
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace equivix
