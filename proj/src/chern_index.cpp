#include "equivix/chern_index.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "equivix/alternating.hpp"
#include "equivix/error.hpp"

namespace equivix {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

cplx antisymmetrized(const Mat& left, const std::vector<Jet>& jets) {
  std::vector<std::vector<Mat>> factors;
  factors.reserve(jets.size());
  for (const Jet& j : jets) factors.push_back(j.partials);
  return alternating_trace(left, factors);
}

}  // namespace

long long IndexResult::nearest_integer() const { return std::llround(value.real()); }

nlohmann::json IndexResult::to_json() const {
  nlohmann::json hist = nlohmann::json::array();
  for (const cplx& h : history) hist.push_back({h.real(), h.imag()});
  return {{"method", method},
          {"g_description", g_description},
          {"value_re", value.real()},
          {"value_im", value.imag()},
          {"error_estimate", error_estimate},
          {"evaluations", evaluations},
          {"seconds", seconds},
          {"converged", converged},
          {"n_g", n_g},
          {"det_normal", det_normal},
          {"nearest_integer", nearest_integer()},
          {"history", hist}};
}

IndexMethod parse_index_method(const std::string& s) {
  if (s == "auto") return IndexMethod::Auto;
  if (s == "integral") return IndexMethod::Integral;
  if (s == "fixed-point") return IndexMethod::FixedPoint;
  throw Error(ErrorCode::Usage, "unknown method '" + s + "' (auto|integral|fixed-point)");
}

cplx index_prefactor(int n_g, double det_normal) {
  return 1.0 / (std::pow(2.0 * kPi * kI, n_g) * factorial(n_g) * det_normal);
}

cplx chern_integrand(const SymbolField& a, const IsometryAction& g, const Vec& w,
                     DerivativeMode mode) {
  if (g.n_g < 1) {
    throw Error(ErrorCode::WrongMethod, "chern_integrand: needs n_g >= 1");
  }
  const Vec z = embed_fixed_point(g, w);
  const Jet j = hat_projection_jet(a, z, fixed_directions(g), mode);
  std::vector<Jet> slots(2 * g.n_g, j);
  return antisymmetrized(g.fiber_matrix() * j.value, slots);
}

IndexResult equivariant_index_integral(const SymbolField& a, const IsometryAction& g,
                                       const QuadratureConfig& q, DerivativeMode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  if (g.n_g < 1) {
    throw Error(ErrorCode::WrongMethod,
                "integral formula needs a positive-dimensional fixed space; use fixed-point");
  }
  if (!(a.order > 0.0)) {
    throw Error(ErrorCode::Precondition, "integral formula needs symbol order m > 0");
  }
  if (g.n() != a.n) {
    throw Error(ErrorCode::DimensionMismatch, "group element dimension does not match symbol");
  }
  const Mat fiber = g.fiber_matrix();
  const std::vector<Vec> dirs = fixed_directions(g);
  const int slots = 2 * g.n_g;
  const Integrand f = [&](const Vec& w) {
    const Jet j = hat_projection_jet(a, embed_fixed_point(g, w), dirs, mode);
    return antisymmetrized(fiber * j.value, std::vector<Jet>(slots, j));
  };
  const QuadratureResult qr = integrate(2 * g.n_g, f, q);
  const cplx pre = index_prefactor(g.n_g, g.det_normal);
  IndexResult out;
  out.method = "integral";
  out.g_description = g.description;
  out.value = pre * qr.value;
  out.error_estimate = std::abs(pre) * qr.error_estimate;
  out.evaluations = qr.evaluations;
  out.converged = qr.converged;
  out.n_g = g.n_g;
  out.det_normal = g.det_normal;
  for (const cplx& h : qr.history) out.history.push_back(pre * h);
  out.seconds = elapsed_since(t0);
  return out;
}

IndexResult fixed_point_index(const SymbolField& a, const IsometryAction& g,
                              double det_floor) {
  const auto t0 = std::chrono::steady_clock::now();
  if (g.n_g > 0) {
    throw Error(ErrorCode::WrongMethod,
                "fixed-point formula needs isolated fixed points, but g fixes a " +
                    std::to_string(g.n_g) + "-dimensional subspace; use the integral");
  }
  if (std::abs(g.det_normal) < det_floor) {
    throw Error(ErrorCode::IllConditioned,
                "fixed-point formula: |det(g - 1)| = " + std::to_string(g.det_normal) +
                    " is below the conditioning floor");
  }
  const Mat e0 = hat_projection(a, Vec::Zero(a.phase_dim())).m;
  IndexResult out;
  out.method = "fixed-point";
  out.g_description = g.description;
  out.value = (g.fiber_matrix() * e0).trace() / g.det_normal;
  out.error_estimate = 0.0;
  out.evaluations = 1;
  out.n_g = 0;
  out.det_normal = g.det_normal;
  out.history.push_back(out.value);
  out.seconds = elapsed_since(t0);
  return out;
}

IndexResult compute_index(const SymbolField& a, const IsometryAction& g,
                          IndexMethod method, const QuadratureConfig& q,
                          double det_floor) {
  switch (method) {
    case IndexMethod::Integral:
      return equivariant_index_integral(a, g, q);
    case IndexMethod::FixedPoint:
      return fixed_point_index(a, g, det_floor);
    case IndexMethod::Auto:
      break;
  }
  return g.n_g >= 1 ? equivariant_index_integral(a, g, q) : fixed_point_index(a, g, det_floor);
}

cplx CyclicCocycle::operator()(const std::vector<MatrixField>& fs) const {
  if (static_cast<int>(fs.size()) != degree + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                name + ": expected " + std::to_string(degree + 1) + " arguments");
  }
  return eval(fs);
}

namespace {

void check_invariance(const IsometryAction& g, const Mat& fiber, const MatrixField& f,
                      double tol) {
  const Mat inv = fiber.inverse();
  std::mt19937_64 rng(97);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < 6; ++s) {
    Vec z(f.phase_dim);
    for (int k = 0; k < z.size(); ++k) z(k) = normal(rng);
    const Mat here = f.value(z);
    const Mat moved = fiber * f.value(phase_space_pullback(g, z)) * inv;
    if ((moved - here).norm() > tol * std::max(1.0, here.norm())) {
      throw Error(ErrorCode::Precondition,
                  "epsilon cocycle: argument " + f.name + " is not g-invariant");
    }
  }
}

}  // namespace

QuadratureResult epsilon_cocycle(const IsometryAction& g, const Mat& fiber_in,
                                 const std::vector<MatrixField>& fields,
                                 const EpsilonOptions& opts) {
  if (static_cast<int>(fields.size()) != 2 * g.n_g + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "epsilon cocycle: needs 2 n_g + 1 = " + std::to_string(2 * g.n_g + 1) +
                    " arguments");
  }
  const int size = fields.front().size;
  const int phase_dim = 2 * g.n();
  for (const auto& f : fields) {
    if (f.size != size || f.phase_dim != phase_dim) {
      throw Error(ErrorCode::DimensionMismatch, "epsilon cocycle: field shape mismatch");
    }
  }
  const Mat fiber = fiber_in.size() == 0 ? Mat(Mat::Identity(size, size)) : fiber_in;
  if (fiber.rows() != size) {
    throw Error(ErrorCode::DimensionMismatch, "epsilon cocycle: fiber rep has wrong size");
  }
  if (opts.check_invariance) {
    for (const auto& f : fields) check_invariance(g, fiber, f, opts.invariance_tol);
  }
  if (g.n_g == 0) {
    QuadratureResult r;
    r.value = (fiber * fields[0].value(Vec::Zero(phase_dim))).trace() / g.det_normal;
    r.converged = true;
    r.evaluations = 1;
    r.history.push_back(r.value);
    return r;
  }
  const std::vector<Vec> dirs = fixed_directions(g);
  const Integrand f = [&](const Vec& w) {
    const Vec z = embed_fixed_point(g, w);
    const Mat left = fiber * fields[0].value(z);
    std::vector<Jet> jets;
    jets.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) jets.push_back(fields[k].jet(z, dirs));
    return antisymmetrized(left, jets);
  };
  QuadratureResult r = integrate(2 * g.n_g, f, opts.quadrature);
  const cplx pre = index_prefactor(g.n_g, g.det_normal);
  r.value *= pre;
  r.error_estimate *= std::abs(pre);
  for (auto& h : r.history) h *= pre;
  return r;
}

CyclicCocycle epsilon_functional(const IsometryAction& g, const Mat& fiber,
                                 const EpsilonOptions& opts) {
  CyclicCocycle c;
  c.degree = 2 * g.n_g;
  c.name = "epsilon_g";
  c.eval = [g, fiber, opts](const std::vector<MatrixField>& fs) {
    return epsilon_cocycle(g, fiber, fs, opts).value;
  };
  return c;
}

cplx k_pairing(const CyclicCocycle& phi, const MatrixField& e,
               const std::optional<Mat>& reference, std::uint64_t seed) {
  if (phi.degree % 2 != 0) {
    throw Error(ErrorCode::Precondition, "k_pairing: cocycle degree must be even");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int s = 0; s < 16; ++s) {
    Vec z(e.phase_dim);
    for (int k = 0; k < z.size(); ++k) z(k) = normal(rng);
    const Mat p = e.value(z);
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10) {
      throw Error(ErrorCode::NotIdempotent, "k_pairing: e is not idempotent");
    }
  }
  const int l = phi.degree / 2;
  cplx raw = phi(std::vector<MatrixField>(phi.degree + 1, e));
  if (reference) {
    if (((*reference) * (*reference) - *reference).cwiseAbs().maxCoeff() > 1e-10) {
      throw Error(ErrorCode::NotIdempotent, "k_pairing: reference is not idempotent");
    }
    const MatrixField p0 = constant_field(e.phase_dim, *reference);
    raw -= phi(std::vector<MatrixField>(phi.degree + 1, p0));
  }
  return raw / (std::pow(2.0 * kPi * kI, l) * factorial(l));
}

}  // namespace equivix
