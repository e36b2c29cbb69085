#include "orlicz/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/errors.hpp"

namespace orlicz {

ProbeSet make_probe_set(const StepFunction& f, const ProbeOptions& options) {
  ProbeSet set;
  const std::size_t n = f.size();
  if (n == 0) return set;
  std::vector<Block> zero(f.blocks().begin(), f.blocks().end());
  for (auto& b : zero) b.value = 0;

  for (std::size_t i = 0; i < n; ++i) {
    auto cells = zero;
    cells[i].value = 1;
    set.candidates.emplace_back(std::move(cells));
  }

  std::vector<double> levels;
  for (const auto& b : f.blocks()) {
    if (b.value != 0) levels.push_back(std::fabs(b.value));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double level : levels) {
    auto cells = zero;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::fabs(f[i].value) >= level) cells[i].value = 1;
    }
    set.candidates.emplace_back(std::move(cells));
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t t = 0; t < options.random_probes; ++t) {
    auto cells = zero;
    for (auto& b : cells) b.value = 1.0 - unit(rng);  // (0, 1]
    set.candidates.emplace_back(std::move(cells));
  }
  return set;
}

MultiplierReport multiplier_norm_estimate(const StepFunction& f, const NormSpec& x,
                                          const NormSpec& y, const ProbeSet& probes) {
  MultiplierReport r;
  r.probe_count = probes.candidates.size();
  if (x == y) r.closed_form_upper = f.max_abs();
  bool first = true;
  for (const auto& g : probes.candidates) {
    if (!same_layout(f, g)) throw InputError("multiplier estimate: probe layout differs from f");
    const double gx = norm(g, x);
    if (!(gx > 0) || !std::isfinite(gx)) {
      throw NumericError("multiplier estimate: candidate with zero X-norm");
    }
    const StepFunction gn = scale(g, 1.0 / gx);
    const double v = norm(multiply(f, gn), y);
    if (first || v > r.norm_estimate) {
      r.norm_estimate = v;
      r.achieving = gn;
      first = false;
    }
  }
  return r;
}

MultiplierReport multiplier_norm_estimate(const StepFunction& f, const NormSpec& x,
                                          const NormSpec& y, const ProbeOptions& options) {
  return multiplier_norm_estimate(f, x, y, make_probe_set(f, options));
}

DecayProfile multiplier_oc_profile(const StepFunction& f, const NormSpec& x, const NormSpec& y,
                                   std::span<const BlockSet> sets, const ProbeOptions& options,
                                   const DecayOptions& decay) {
  if (!nested_decreasing(sets)) throw InputError("multiplier_oc_profile: sets not nested");
  const ProbeSet probes = make_probe_set(f, options);
  std::vector<double> params, sup;
  for (std::size_t n = 0; n < sets.size(); ++n) {
    params.push_back(static_cast<double>(n));
    sup.push_back(multiplier_norm_estimate(restrict(f, sets[n]), x, y, probes).norm_estimate);
  }
  return make_profile("n", std::move(params), std::move(sup), decay);
}

}  // namespace orlicz
