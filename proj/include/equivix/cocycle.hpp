#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "equivix/types.hpp"

namespace equivix {

struct CocycleReport {
  int tuples = 0;
  double max_coboundary = 0.0;
  double max_cyclic_defect = 0.0;
  /// Largest |phi| among the terms, the natural size of the defects.
  double scale = 0.0;
  bool pass = false;

  nlohmann::json to_json() const {
    return {{"tuples", tuples},
            {"max_coboundary", max_coboundary},
            {"max_cyclic_defect", max_cyclic_defect},
            {"scale", scale},
            {"pass", pass}};
  }
};

/// Hochschild coboundary
///   (b phi)(a0..a_{k+1}) = sum_i (-1)^i phi(.., a_i a_{i+1}, ..) + (-1)^{k+1} phi(a_{k+1} a0, a1..a_k)
/// and the cyclic defect phi(a0..ak) - (-1)^k phi(ak, a0..a_{k-1}).
/// Each tuple holds degree + 2 elements; the cyclic check uses the first degree + 1.
template <class T, class Phi, class Mul>
CocycleReport cocycle_check(const Phi& phi, int degree, const std::vector<std::vector<T>>& tuples,
                            const Mul& mul, double tol) {
  CocycleReport rep;
  const int k = degree;
  for (const auto& tup : tuples) {
    cplx b{0.0, 0.0};
    for (int i = 0; i <= k; ++i) {
      std::vector<T> args;
      for (int j = 0; j < i; ++j) args.push_back(tup[j]);
      args.push_back(mul(tup[i], tup[i + 1]));
      for (int j = i + 2; j <= k + 1; ++j) args.push_back(tup[j]);
      const cplx term = phi(args);
      rep.scale = std::max(rep.scale, std::abs(term));
      b += (i % 2 == 0 ? 1.0 : -1.0) * term;
    }
    {
      std::vector<T> args{mul(tup[k + 1], tup[0])};
      for (int j = 1; j <= k; ++j) args.push_back(tup[j]);
      const cplx term = phi(args);
      rep.scale = std::max(rep.scale, std::abs(term));
      b += ((k + 1) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    std::vector<T> base(tup.begin(), tup.begin() + k + 1);
    std::vector<T> rotated{tup[k]};
    for (int j = 0; j < k; ++j) rotated.push_back(tup[j]);
    const cplx p0 = phi(base);
    const cplx p1 = phi(rotated);
    rep.scale = std::max({rep.scale, std::abs(p0), std::abs(p1)});
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rep.max_coboundary = std::max(rep.max_coboundary, std::abs(b));
    rep.max_cyclic_defect = std::max(rep.max_cyclic_defect, std::abs(p0 - sign * p1));
    ++rep.tuples;
  }
  const double bound = tol * std::max(1.0, rep.scale);
  rep.pass = rep.max_coboundary <= bound && rep.max_cyclic_defect <= bound;
  return rep;
}

}  // namespace equivix
