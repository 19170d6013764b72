#pragma once

#include <vector>

#include "equivix/types.hpp"

namespace equivix {

/// sum over permutations s of {0..k-1} of sgn(s) * tr(left * F[0][s0] * ... * F[k-1][s(k-1)]).
///
/// factors[slot][dir] is the matrix placed in `slot` when it is assigned
/// direction `dir`. Evaluated by dynamic programming over subsets of used
/// directions, so the cost is k * 2^(k-1) products instead of k!.
cplx alternating_trace(const Mat& left,
                       const std::vector<std::vector<Mat>>& factors);

/// Same sum by explicit enumeration of permutations. Reference for tests.
cplx alternating_trace_bruteforce(const Mat& left,
                                  const std::vector<std::vector<Mat>>& factors);

/// Sign of a permutation given as a sequence of distinct indices.
int permutation_sign(const std::vector<int>& perm);

}  // namespace equivix
