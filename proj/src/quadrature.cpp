#include "equivix/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "equivix/error.hpp"

namespace equivix {

void QuadratureConfig::validate() const {
  if (nodes < 8) {
    throw Error(ErrorCode::Precondition,
                "quadrature: nodes must be >= 8, got " + std::to_string(nodes));
  }
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorCode::Precondition, "quadrature: tolerances must be positive");
  }
  if (min_level < 0 || max_level < min_level || max_level > 8) {
    throw Error(ErrorCode::Precondition, "quadrature: bad refinement levels");
  }
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::Precondition, "quadrature: scale must be positive");
  }
  if (cell_partition < 1) {
    throw Error(ErrorCode::Precondition, "quadrature: cell_partition must be >= 1");
  }
}

nlohmann::json QuadratureConfig::to_json() const {
  return {{"nodes", nodes},         {"min_level", min_level},
          {"max_level", max_level}, {"rel_tol", rel_tol},
          {"abs_tol", abs_tol},     {"scale", scale},
          {"cell_partition", cell_partition}};
}

QuadratureConfig QuadratureConfig::from_json(const nlohmann::json& j,
                                             const QuadratureConfig& defaults) {
  QuadratureConfig base = defaults;
  base.nodes = j.value("nodes", base.nodes);
  base.min_level = j.value("min_level", base.min_level);
  base.max_level = j.value("max_level", base.max_level);
  base.rel_tol = j.value("rel_tol", base.rel_tol);
  base.abs_tol = j.value("abs_tol", base.abs_tol);
  base.scale = j.value("scale", base.scale);
  base.cell_partition = j.value("cell_partition", base.cell_partition);
  return base;
}

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorCode::Precondition, "gauss_legendre: n < 1");
  std::unique_ptr<gsl_integration_glfixed_table,
                  decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw Error(ErrorCode::NumericFailure, "gauss_legendre: alloc failed");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = 0.0;
    double w = 0.0;
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &x, &w,
                                  table.get());
    rule.nodes[i] = x;
    rule.weights[i] = w;
  }
  return rule;
}

cplx pairwise_sum(const cplx* values, std::size_t count) {
  if (count == 0) return {0.0, 0.0};
  if (count <= 8) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("EQUIVIX_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return hw;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();  // joins
  if (failure) std::rethrow_exception(failure);
}

namespace {

struct MappedRule {
  std::vector<double> z;
  std::vector<double> w;  // includes the Jacobian scale * sec^2(u)
};

MappedRule compactified_rule(int nodes, int level, double scale) {
  const int panels = 1 << level;
  const double width = kPi / panels;
  MappedRule out;
  for (int p = 0; p < panels; ++p) {
    const double lo = -kPi / 2 + p * width;
    const GaussRule r = gauss_legendre(nodes, lo, lo + width);
    for (int i = 0; i < nodes; ++i) {
      const double u = r.nodes[i];
      const double c = std::cos(u);
      out.z.push_back(scale * std::tan(u));
      out.w.push_back(r.weights[i] * scale / (c * c));
    }
  }
  return out;
}

// Sum over coordinates k..dim-1 with the leading ones fixed in `point`.
cplx nested_sum(const std::vector<const std::vector<double>*>& zs,
                const std::vector<const std::vector<double>*>& ws, int k,
                Vec& point, const Integrand& f) {
  const int dim = static_cast<int>(zs.size());
  const auto& z = *zs[k];
  const auto& w = *ws[k];
  std::vector<cplx> parts(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    point(k) = z[i];
    const cplx inner = (k + 1 == dim) ? f(point) : nested_sum(zs, ws, k + 1, point, f);
    parts[i] = w[i] * inner;
  }
  return pairwise_sum(parts.data(), parts.size());
}

cplx tensor_sum(const std::vector<const std::vector<double>*>& zs,
                const std::vector<const std::vector<double>*>& ws,
                const Integrand& f, int partition) {
  const int dim = static_cast<int>(zs.size());
  if (dim == 0) return f(Vec());
  const int outer = static_cast<int>(zs[0]->size());
  const int cells = (outer + partition - 1) / partition;
  std::vector<cplx> slab(outer);
  parallel_for(cells, [&](int cell) {
    Vec point(dim);
    const int end = std::min(outer, (cell + 1) * partition);
    for (int i = cell * partition; i < end; ++i) {
      point(0) = (*zs[0])[i];
      const cplx inner = dim == 1 ? f(point) : nested_sum(zs, ws, 1, point, f);
      slab[i] = (*ws[0])[i] * inner;
    }
  });
  return pairwise_sum(slab.data(), slab.size());
}

}  // namespace

QuadratureResult integrate_level(int dim, const Integrand& f,
                                 const QuadratureConfig& cfg, int level) {
  cfg.validate();
  if (dim < 0) throw Error(ErrorCode::InvalidDimension, "integrate: dim < 0");
  const MappedRule rule = compactified_rule(cfg.nodes, level, cfg.scale);
  std::vector<const std::vector<double>*> zs(dim, &rule.z);
  std::vector<const std::vector<double>*> ws(dim, &rule.w);
  QuadratureResult out;
  out.value = tensor_sum(zs, ws, f, cfg.cell_partition);
  out.evaluations = static_cast<long long>(std::pow(rule.z.size(), dim));
  out.level = level;
  out.history.push_back(out.value);
  return out;
}

QuadratureResult integrate(int dim, const Integrand& f,
                           const QuadratureConfig& cfg) {
  cfg.validate();
  QuadratureResult out;
  cplx previous{0.0, 0.0};
  for (int level = cfg.min_level; level <= cfg.max_level; ++level) {
    const QuadratureResult step = integrate_level(dim, f, cfg, level);
    out.evaluations += step.evaluations;
    out.history.push_back(step.value);
    out.value = step.value;
    out.level = level;
    if (level > cfg.min_level) {
      out.error_estimate = std::abs(step.value - previous);
      const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(step.value));
      if (out.error_estimate <= target) {
        out.converged = true;
        break;
      }
    }
    previous = step.value;
  }
  if (cfg.min_level == cfg.max_level) {
    // A single level gives no refinement difference to judge by.
    out.error_estimate = std::numeric_limits<double>::infinity();
  }
  return out;
}

cplx integrate_box(const std::vector<GaussRule>& rules, const Integrand& f) {
  std::vector<const std::vector<double>*> zs;
  std::vector<const std::vector<double>*> ws;
  for (const auto& r : rules) {
    zs.push_back(&r.nodes);
    ws.push_back(&r.weights);
  }
  return tensor_sum(zs, ws, f, 1);
}

}  // namespace equivix
