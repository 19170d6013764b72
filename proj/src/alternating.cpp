#include "equivix/alternating.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "equivix/error.hpp"

namespace equivix {

namespace {

void check_shape(const Mat& left, const std::vector<std::vector<Mat>>& factors) {
  const std::size_t k = factors.size();
  if (k > 12) {
    throw Error(ErrorCode::UnsupportedShape, "alternating_trace: too many slots");
  }
  for (const auto& slot : factors) {
    if (slot.size() != k) {
      throw Error(ErrorCode::DimensionMismatch,
                  "alternating_trace: each slot needs one matrix per direction");
    }
    for (const Mat& m : slot) {
      if (m.rows() != left.cols() || m.cols() != left.cols()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "alternating_trace: factor size mismatch");
      }
    }
  }
}

}  // namespace

cplx alternating_trace(const Mat& left,
                       const std::vector<std::vector<Mat>>& factors) {
  check_shape(left, factors);
  const int k = static_cast<int>(factors.size());
  if (k == 0) return left.trace();
  const std::uint32_t full = (1u << k) - 1u;
  // partial[S]: signed sum of left * F[0][.] ... F[|S|-1][.] over orderings of S.
  std::vector<Mat> partial(full + 1);
  std::vector<bool> present(full + 1, false);
  partial[0] = left;
  present[0] = true;
  for (int slot = 0; slot < k; ++slot) {
    for (std::uint32_t s = 0; s <= full; ++s) {
      if (!present[s] || std::popcount(s) != slot) continue;
      for (int d = 0; d < k; ++d) {
        const std::uint32_t bit = 1u << d;
        if (s & bit) continue;
        // Appending d after the set s adds one inversion per larger member.
        const int inversions = std::popcount(s >> (d + 1));
        const Mat term = partial[s] * factors[slot][d];
        const std::uint32_t t = s | bit;
        if (!present[t]) {
          partial[t] = (inversions % 2 == 0) ? term : Mat(-term);
          present[t] = true;
        } else if (inversions % 2 == 0) {
          partial[t] += term;
        } else {
          partial[t] -= term;
        }
      }
      if (slot + 1 < k) partial[s].resize(0, 0);
    }
  }
  return partial[full].trace();
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

cplx alternating_trace_bruteforce(const Mat& left,
                                  const std::vector<std::vector<Mat>>& factors) {
  check_shape(left, factors);
  const int k = static_cast<int>(factors.size());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  cplx total{0.0, 0.0};
  do {
    Mat prod = left;
    for (int slot = 0; slot < k; ++slot) prod = prod * factors[slot][perm[slot]];
    total += static_cast<double>(permutation_sign(perm)) * prod.trace();
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace equivix
