#include "orlicz/conjugate.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kPrimalStep = 0.01;
constexpr double kPrimalLow = -23.0258509299404568;  // ln 1e-10

struct PrimalSamples {
  std::vector<wide> u;
  std::vector<wide> phi;
};

// Log grid s_k = k * ds with s_lo <= s_k <= s_hi; integer multiples keep s = 0
// (u = 1, where several catalog entries have a kink) on the grid.
std::vector<double> integer_log_grid(double s_lo, double s_hi, double ds) {
  const auto k_lo = static_cast<long long>(std::ceil(s_lo / ds));
  const auto k_hi = static_cast<long long>(std::floor(s_hi / ds));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(0LL, k_hi - k_lo + 1)));
  for (long long k = k_lo; k <= k_hi; ++k) out.push_back(static_cast<double>(k) * ds);
  return out;
}

PrimalSamples primal_samples(const OrliczFunction& phi) {
  PrimalSamples out;
  if (const auto* t = phi.table()) {
    out.u.assign(t->u().begin(), t->u().end());
    out.phi.assign(t->phi().begin(), t->phi().end());
    return out;
  }
  const auto s = integer_log_grid(kPrimalLow, default_log_top(phi), kPrimalStep);
  out.u.reserve(s.size() + 1);
  out.phi.reserve(s.size() + 1);
  out.u.push_back(0);
  out.phi.push_back(0);
  for (double si : s) {
    const wide u = std::exp(static_cast<wide>(si));
    out.u.push_back(u);
    out.phi.push_back(phi.value(u));
  }
  return out;
}

// Maximizer of uv - phi(u) on [lo, hi] for a catalog entry, by bisection on phi'.
wide refine(const OrliczFunction& phi, wide v, wide lo, wide hi, wide best) {
  for (int i = 0; i < 80 && hi - lo > 0; ++i) {
    const wide mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (phi.derivative(mid) < v ? lo : hi) = mid;
  }
  best = std::max(best, lo * v - phi.value(lo));
  best = std::max(best, hi * v - phi.value(hi));
  return best;
}

}  // namespace

std::vector<wide> derivative_image_grid(const OrliczFunction& phi, double s_lo, double s_hi,
                                        double ds) {
  if (!(ds > 0) || !(s_hi > s_lo)) throw InputError("derivative_image_grid: bad range");
  std::vector<wide> v{0};
  for (double s : integer_log_grid(s_lo, s_hi, ds)) {
    const wide u = std::exp(static_cast<wide>(s));
    if (u > phi.domain_max()) break;
    v.push_back(phi.derivative(u));
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<wide> default_conjugate_grid(const OrliczFunction& phi) {
  if (const auto* t = phi.table()) {
    std::vector<wide> v{0};
    const auto u = t->u();
    const auto f = t->phi();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      v.push_back((f[i + 1] - f[i]) / (u[i + 1] - u[i]));
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  return derivative_image_grid(phi, kPrimalLow, default_log_top(phi), kPrimalStep);
}

OrliczFunction conjugate(const OrliczFunction& phi, std::span<const wide> v_grid) {
  if (!phi.coercive()) {
    throw InputError("conjugate: phi is not coercive, phi* is infinite for large v");
  }
  if (v_grid.empty()) throw InputError("conjugate: empty grid");
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    if (!(v_grid[i] >= 0) || !std::isfinite(v_grid[i])) {
      throw InputError("conjugate: grid values must be finite and >= 0");
    }
    if (i > 0 && !(v_grid[i] > v_grid[i - 1])) {
      throw InputError("conjugate: grid must be strictly increasing");
    }
  }

  const PrimalSamples primal = primal_samples(phi);
  const std::size_t n = primal.u.size();
  const wide v_max = phi.table() ? phi.table()->last_slope() : phi.derivative(primal.u.back());
  const bool refine_catalog = phi.is_catalog();

  std::vector<wide> v_out;
  std::vector<wide> f_out;
  v_out.reserve(v_grid.size());
  f_out.reserve(v_grid.size());

  std::size_t idx = 0;
  for (const wide v : v_grid) {
    if (v > v_max) break;
    // Unimodal in the index for convex samples: advance while not decreasing.
    while (idx + 1 < n &&
           primal.u[idx + 1] * v - primal.phi[idx + 1] >= primal.u[idx] * v - primal.phi[idx]) {
      ++idx;
    }
    wide best = primal.u[idx] * v - primal.phi[idx];
    if (refine_catalog && phi.derivative(primal.u[idx]) != v) {
      const wide lo = primal.u[idx == 0 ? 0 : idx - 1];
      const wide hi = primal.u[std::min(idx + 1, n - 1)];
      best = refine(phi, v, lo, hi, best);
    }
    best = std::max(best, wide{0});
    if (!f_out.empty()) best = std::max(best, f_out.back());
    v_out.push_back(v);
    f_out.push_back(best);
  }
  if (v_out.size() < 3) {
    throw InputError("conjugate: fewer than 3 grid points inside the sampled slope range");
  }
  if (v_out.front() == 0) f_out.front() = 0;

  TabulatedConvex::Options options;
  options.enforce_coverage = false;
  return OrliczFunction::tabulated(TabulatedConvex(std::move(v_out), std::move(f_out), options),
                                   true);
}

OrliczFunction conjugate(const OrliczFunction& phi) {
  const auto grid = default_conjugate_grid(phi);
  return conjugate(phi, grid);
}

double fenchel_young_gap(const OrliczFunction& phi, const OrliczFunction& phistar, double u,
                         double v) {
  if (!(u >= 0) || !(v >= 0)) throw DomainError("fenchel_young_gap: arguments must be >= 0");
  const wide uv = static_cast<wide>(u) * static_cast<wide>(v);
  return static_cast<double>(phi.value(u) + phistar.value(v) - uv);
}

}  // namespace orlicz
