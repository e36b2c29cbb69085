#include "orlicz/delta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_probes(std::span<const double> u) {
  if (u.size() < 8) throw InputError("delta verdict: at least 8 probes required");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0) || !std::isfinite(u[i])) throw InputError("delta verdict: probes must be > 0");
    if (i > 0 && !(u[i] > u[i - 1])) throw InputError("delta verdict: probes must increase");
  }
  if (std::log10(u.back() / u.front()) < 6.0 - 1e-12) {
    throw InputError("delta verdict: probes must span at least 6 decades");
  }
}

// ln(phi(lambda u)/phi(u)) or NaN when phi(u) = 0.
std::vector<double> log_ratios(const OrliczFunction& phi, double lambda,
                               std::span<const double> u) {
  std::vector<double> out(u.size(), kNaN);
  const double ll = std::log(lambda);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = std::log(u[i]);
    const double base = phi.log_value(s);
    if (base == -std::numeric_limits<double>::infinity()) continue;
    const double top = phi.log_value(s + ll);
    const double r = top - base;
    if (!std::isfinite(r)) {
      throw NumericError("delta verdict: non-finite ratio at u = " + std::to_string(u[i]));
    }
    out[i] = r;
  }
  return out;
}

}  // namespace

std::string_view to_string(DeltaCondition c) {
  switch (c) {
    case DeltaCondition::delta2_infinity: return "delta2_infinity";
    case DeltaCondition::delta2_all: return "delta2_all";
    case DeltaCondition::delta0: return "delta0";
  }
  return "?";
}

DeltaVerdict delta2_verdict(const OrliczFunction& phi, std::span<const double> u_probe,
                            const Delta2Options& options) {
  if (options.condition == DeltaCondition::delta0) {
    throw InputError("delta2_verdict: condition must be a delta2 variant");
  }
  check_probes(u_probe);
  DeltaVerdict out;
  out.condition = options.condition;
  out.threshold_used = options.c_cap;
  out.lambda_used = 2.0;
  out.u0 = options.condition == DeltaCondition::delta2_infinity ? options.u0 : 0.0;
  out.probe_us.assign(u_probe.begin(), u_probe.end());
  out.log_ratios = log_ratios(phi, 2.0, u_probe);

  std::vector<double> used;
  double max_lr = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u_probe.size(); ++i) {
    if (std::isnan(out.log_ratios[i]) || u_probe[i] < out.u0) continue;
    used.push_back(out.log_ratios[i]);
    if (out.log_ratios[i] > max_lr) {
      max_lr = out.log_ratios[i];
      out.witness_u = u_probe[i];
    }
  }
  if (used.size() < 3) throw NumericError("delta2_verdict: fewer than 3 usable probes");
  out.witness_log_ratio = max_lr;

  std::array<double, 3> tail{used[used.size() - 3], used[used.size() - 2], used.back()};
  std::sort(tail.begin(), tail.end());
  const double median = std::exp(tail[1]);
  const double last = std::exp(used.back());
  const bool bounded = max_lr <= std::log(options.c_cap);
  const bool settled = last <= 1.05 * median;
  out.holds = bounded && settled;
  return out;
}

DeltaVerdict delta0_verdict(const OrliczFunction& phi, double lambda,
                            std::span<const double> u_probe, double divergence_threshold) {
  if (!(lambda > 1) || !std::isfinite(lambda)) throw InputError("delta0_verdict: lambda must be > 1");
  if (!(divergence_threshold > 0)) throw InputError("delta0_verdict: threshold must be > 0");
  check_probes(u_probe);
  DeltaVerdict out;
  out.condition = DeltaCondition::delta0;
  out.threshold_used = divergence_threshold;
  out.lambda_used = lambda;
  out.probe_us.assign(u_probe.begin(), u_probe.end());
  out.log_ratios = log_ratios(phi, lambda, u_probe);

  std::vector<double> used;
  for (std::size_t i = 0; i < u_probe.size(); ++i) {
    if (std::isnan(out.log_ratios[i])) continue;
    used.push_back(out.log_ratios[i]);
    out.witness_u = u_probe[i];
  }
  if (used.size() < 3) throw NumericError("delta0_verdict: fewer than 3 usable probes");
  out.witness_log_ratio = used.back();
  const std::size_t m = used.size();
  const bool increasing = used[m - 3] < used[m - 2] && used[m - 2] < used[m - 1];
  out.holds = increasing && used.back() > std::log(divergence_threshold);
  return out;
}

std::vector<double> default_delta_probes(const OrliczFunction& phi, double lambda) {
  if (!(lambda > 1)) throw InputError("default_delta_probes: lambda must be > 1");
  double hi = 1e12;
  const wide top = phi.domain_max();
  if (std::isfinite(top)) hi = std::min(hi, static_cast<double>(top / lambda) * (1 - 1e-12));
  if (!(hi > 1e-8)) throw InputError("default_delta_probes: function domain too small");
  return log_spaced(1e-8, hi, 64);
}

}  // namespace orlicz
