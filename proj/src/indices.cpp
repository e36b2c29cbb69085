#include "orlicz/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/conjugate.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEarlierWindow = 0.75;

// Largest admissible ln u, shrunk slightly so exp(s) stays on the grid.
double log_domain_max(const OrliczFunction& phi) {
  const wide top = phi.domain_max();
  if (!std::isfinite(top)) return kInf;
  const double s = static_cast<double>(std::log(top));
  return s - 1e-12 * std::max(1.0, std::fabs(s));
}

void check_log_grid(std::span<const double> s) {
  if (s.size() < 3) throw InputError("index estimation: u grid needs at least 3 points");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1]) || !std::isfinite(s[i])) {
      throw InputError("index estimation: ln u grid must be finite and increasing");
    }
  }
  if (s.back() - s.front() < 6.0 * std::log(10.0) - 1e-9) {
    throw InputError("index estimation: u grid must span at least 6 decades");
  }
}

bool nondecreasing(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) return false;
  }
  return true;
}

// Usable values in grid order, truncated to the leading `fraction` of them.
std::vector<double> usable(std::span<const double> row, double fraction) {
  std::vector<double> out;
  for (double x : row) {
    if (!std::isnan(x)) out.push_back(x);
  }
  if (fraction < 1.0) {
    const auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(out.size())));
    out.resize(std::min(out.size(), std::max<std::size_t>(keep, 1)));
  }
  return out;
}

std::span<const double> tail_half(const std::vector<double>& values) {
  const std::size_t start = values.size() / 2;
  return std::span<const double>(values).subspan(std::min(start, values.size() - 1));
}

// Length of the longest strictly monotone run ending at the last element.
std::size_t monotone_suffix(std::span<const double> x) {
  if (x.size() < 2) return x.size();
  std::size_t up = 1, down = 1;
  for (std::size_t i = x.size() - 1; i > 0 && x[i] > x[i - 1]; --i) ++up;
  for (std::size_t i = x.size() - 1; i > 0 && x[i] < x[i - 1]; --i) ++down;
  return std::max(up, down);
}

// ln M(t) from one row of log ratios: the final value when the tail ends in a
// monotone run of at least three points, the tail maximum otherwise.
double limsup_proxy(std::span<const double> row, double fraction) {
  const auto values = usable(row, fraction);
  if (values.size() < 2) return kNaN;
  const auto tail = tail_half(values);
  if (monotone_suffix(tail) >= 3) return tail.back();
  return *std::max_element(tail.begin(), tail.end());
}

struct Fit {
  double slope = kNaN;
  double earlier = kNaN;
};

// Slope through the origin of ln M against ln t over the selected t indices.
Fit origin_slope(const std::vector<double>& log_t, const std::vector<double>& log_m,
                 const std::vector<double>& log_m_earlier, const std::vector<std::size_t>& pick) {
  double num = 0, num_e = 0, den = 0;
  for (std::size_t k : pick) {
    num += log_t[k] * log_m[k];
    num_e += log_t[k] * log_m_earlier[k];
    den += log_t[k] * log_t[k];
  }
  return {num / den, num_e / den};
}

IndexValue make_value(double estimate, double earlier, double threshold) {
  IndexValue v;
  v.estimate = estimate;
  v.increasing = estimate > earlier;
  v.infinite = estimate > threshold && v.increasing;
  return v;
}

}  // namespace

std::vector<double> default_index_log_grid(const OrliczFunction& phi) {
  const double lo = std::log(1e-8);
  double hi = default_log_top(phi);
  if (phi.table()) hi = std::min(hi, log_domain_max(phi));
  if (!(hi - lo >= 6.0 * std::log(10.0))) {
    throw InputError("index estimation: function domain spans fewer than 6 decades above 1e-8");
  }
  return lin_spaced(lo, hi, 256);
}

std::vector<double> default_t_grid() {
  std::vector<double> t;
  for (int k = -6; k <= 6; ++k) {
    if (k != 0) t.push_back(std::ldexp(1.0, k));
  }
  return t;
}

IndexReport matuszewska_indices(const OrliczFunction& phi, std::span<const double> t_grid,
                                std::span<const double> log_u_grid, const IndexOptions& options) {
  check_log_grid(log_u_grid);
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  for (double t : ts) {
    if (!(t > 0) || !std::isfinite(t)) throw InputError("matuszewska_indices: t must be > 0");
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  ts.erase(std::remove(ts.begin(), ts.end(), 1.0), ts.end());
  if (ts.empty() || ts.front() >= 1 || ts.back() <= 1) {
    throw InputError("matuszewska_indices: t grid needs points in (0,1) and (1,inf)");
  }

  IndexReport report;
  report.probe_ts = ts;
  report.probe_log_us.assign(log_u_grid.begin(), log_u_grid.end());
  const double smax = log_domain_max(phi);

  std::vector<double> base(log_u_grid.size(), kNaN);
  for (std::size_t i = 0; i < log_u_grid.size(); ++i) {
    if (log_u_grid[i] > smax) continue;
    const double lv = phi.log_value(log_u_grid[i]);
    if (std::isfinite(lv)) base[i] = lv;
  }

  std::vector<double> log_t(ts.size());
  std::vector<double> log_m(ts.size());
  std::vector<double> log_m_earlier(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    log_t[k] = std::log(ts[k]);
    std::vector<double> row(log_u_grid.size(), kNaN);
    for (std::size_t i = 0; i < log_u_grid.size(); ++i) {
      const double st = log_u_grid[i] + log_t[k];
      if (std::isnan(base[i]) || st > smax) continue;
      const double lv = phi.log_value(st);
      if (std::isfinite(lv)) row[i] = lv - base[i];
    }
    log_m[k] = limsup_proxy(row, 1.0);
    log_m_earlier[k] = limsup_proxy(row, kEarlierWindow);
    report.log_ratio_matrix.push_back(std::move(row));
  }
  report.log_M = log_m;

  std::vector<std::size_t> small, large;
  for (std::size_t k = 0; k < ts.size() && small.size() < options.fit_points; ++k) {
    if (ts[k] < 1 && !std::isnan(log_m[k]) && !std::isnan(log_m_earlier[k])) small.push_back(k);
  }
  for (std::size_t k = ts.size(); k-- > 0 && large.size() < options.fit_points;) {
    if (ts[k] > 1 && !std::isnan(log_m[k]) && !std::isnan(log_m_earlier[k])) large.push_back(k);
  }
  if (small.size() < options.fit_points || large.size() < options.fit_points ||
      options.fit_points == 0) {
    throw NumericError("matuszewska_indices: degenerate fit, too few usable t points");
  }
  const Fit alpha = origin_slope(log_t, log_m, log_m_earlier, small);
  const Fit beta = origin_slope(log_t, log_m, log_m_earlier, large);
  Fit lo = alpha, hi = beta;
  // alpha <= beta; a crossing is finite-u curvature bias, pooled to the midpoint.
  if (lo.slope > hi.slope) lo.slope = hi.slope = (alpha.slope + beta.slope) / 2;
  if (lo.earlier > hi.earlier) lo.earlier = hi.earlier = (alpha.earlier + beta.earlier) / 2;
  report.alpha_inf = make_value(lo.slope, lo.earlier, options.infinity_threshold);
  report.beta_inf = make_value(hi.slope, hi.earlier, options.infinity_threshold);
  return report;
}

IndexReport matuszewska_indices(const OrliczFunction& phi) {
  const auto t = default_t_grid();
  const auto s = default_index_log_grid(phi);
  return matuszewska_indices(phi, t, s);
}

namespace {

std::vector<double> simonenko_row(const OrliczFunction& phi, std::span<const double> log_u_grid) {
  const double smax = log_domain_max(phi);
  std::vector<double> ratios(log_u_grid.size(), kNaN);
  for (std::size_t i = 0; i < log_u_grid.size(); ++i) {
    const double s = log_u_grid[i];
    if (s > smax || s == -kInf) continue;
    const double lv = phi.log_value(s);
    if (!std::isfinite(lv)) continue;
    const double ld = phi.log_derivative(s);
    if (!std::isfinite(ld)) continue;
    ratios[i] = std::exp(s + ld - lv);
  }
  return ratios;
}

}  // namespace

IndexReport simonenko_indices(const OrliczFunction& phi, std::span<const double> log_u_grid,
                              const IndexOptions& options) {
  check_log_grid(log_u_grid);
  IndexReport report;
  report.probe_log_us.assign(log_u_grid.begin(), log_u_grid.end());
  report.simonenko_ratios = simonenko_row(phi, log_u_grid);

  const auto all = usable(report.simonenko_ratios, 1.0);
  if (all.size() < 3) {
    throw NumericError("simonenko_indices: fewer than 3 grid points with phi(u) > 0");
  }
  const auto earlier = usable(report.simonenko_ratios, kEarlierWindow);
  const auto tail = tail_half(all);
  const auto tail_e = tail_half(earlier);
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  const auto [lo_e, hi_e] = std::minmax_element(tail_e.begin(), tail_e.end());

  IndexValue a = make_value(*lo, *lo_e, options.infinity_threshold);
  IndexValue b = make_value(*hi, *hi_e, options.infinity_threshold);
  if (tail.back() > options.infinity_threshold && nondecreasing(tail)) {
    a.infinite = true;
    b.infinite = true;
  }
  report.a_inf = a;
  report.b_inf = b;
  return report;
}

IndexReport simonenko_indices(const OrliczFunction& phi) {
  const auto s = default_index_log_grid(phi);
  return simonenko_indices(phi, s);
}

IndexReport all_indices(const OrliczFunction& phi, const IndexOptions& options) {
  const auto s = default_index_log_grid(phi);
  const auto t = default_t_grid();
  IndexReport report = matuszewska_indices(phi, t, s, options);
  IndexReport sim = simonenko_indices(phi, s, options);
  report.a_inf = sim.a_inf;
  report.b_inf = sim.b_inf;
  report.simonenko_ratios = std::move(sim.simonenko_ratios);
  return report;
}

DualityResidual index_duality_residual(const OrliczFunction& phi) {
  DualityResidual out;
  const OrliczFunction phistar = conjugate(phi);
  out.phi_report = all_indices(phi);
  out.conjugate_report = all_indices(phistar);
  auto inv = [](const std::optional<IndexValue>& v) {
    return v->infinite ? 0.0 : 1.0 / v->estimate;
  };
  out.matuszewska =
      std::fabs(inv(out.phi_report.alpha_inf) + inv(out.conjugate_report.beta_inf) - 1.0);
  out.simonenko = std::fabs(inv(out.phi_report.a_inf) + inv(out.conjugate_report.b_inf) - 1.0);
  return out;
}

bool simonenko_ratio_criterion(const OrliczFunction& phi, std::span<const double> log_u_grid,
                               double tol) {
  check_log_grid(log_u_grid);
  const auto all = usable(simonenko_row(phi, log_u_grid), 1.0);
  if (all.size() < 3) {
    throw NumericError("simonenko_ratio_criterion: fewer than 3 grid points with phi(u) > 0");
  }
  const std::size_t m = all.size();
  const double d1 = std::fabs(all[m - 3] - 1);
  const double d2 = std::fabs(all[m - 2] - 1);
  const double d3 = std::fabs(all[m - 1] - 1);
  return d1 < tol && d2 < tol && d3 < tol && d1 > d2 && d2 > d3;
}

bool simonenko_ratio_criterion(const OrliczFunction& phi, double tol) {
  const auto s = default_index_log_grid(phi);
  return simonenko_ratio_criterion(phi, s, tol);
}

LinearNearZero linear_near_zero_criterion(const OrliczFunction& phi, double u0,
                                          std::size_t probe_count, double cap) {
  if (!(u0 > 0) || !std::isfinite(u0)) throw InputError("linear_near_zero: u0 must be > 0");
  if (probe_count < 2) throw InputError("linear_near_zero: need at least 2 probes");
  LinearNearZero out;
  out.probe_us = log_spaced(u0 * 1e-6, u0, probe_count);
  out.c = kInf;
  out.C = 0;
  for (double u : out.probe_us) {
    const double r = static_cast<double>(phi.value(u)) / u;
    if (!(r > 0)) throw NumericError("linear_near_zero: phi(u) = 0 for some u > 0");
    out.c = std::min(out.c, r);
    out.C = std::max(out.C, r);
  }
  out.holds = out.C / out.c <= cap;
  return out;
}

}  // namespace orlicz
