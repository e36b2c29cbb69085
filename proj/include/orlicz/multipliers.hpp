#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orlicz/compactness.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

struct ProbeOptions {
  std::size_t random_probes = 32;
  std::uint64_t seed = kDefaultSeed;
};

/// Candidate multiplicands g on the layout of f, not yet normalized: each
/// single-block indicator, each level-set indicator chi_{|f| >= level} for the
/// nonzero levels of |f|, then seeded random functions with values in (0,1].
/// Built once and shared so estimates for related f are comparable.
struct ProbeSet {
  std::vector<StepFunction> candidates;
};

ProbeSet make_probe_set(const StepFunction& f, const ProbeOptions& options = {});

struct MultiplierReport {
  double norm_estimate = 0;   // max over candidates of norm(f g, Y), g normalized in X
  StepFunction achieving;     // the maximizing g, normalized in X
  std::size_t probe_count = 0;
  bool lower_bound = true;
  // max|f|, reported when X == Y (the sup is attained on the largest block).
  std::optional<double> closed_form_upper;
};

/// Probes must share the block layout of f. Throws NumericError when a
/// candidate has zero X-norm.
MultiplierReport multiplier_norm_estimate(const StepFunction& f, const NormSpec& x,
                                          const NormSpec& y, const ProbeSet& probes);
MultiplierReport multiplier_norm_estimate(const StepFunction& f, const NormSpec& x,
                                          const NormSpec& y, const ProbeOptions& options = {});

/// n -> estimate of ||f chi_{A_n}||_{M(X,Y)} on one shared probe set.
DecayProfile multiplier_oc_profile(const StepFunction& f, const NormSpec& x, const NormSpec& y,
                                   std::span<const BlockSet> sets,
                                   const ProbeOptions& options = {},
                                   const DecayOptions& decay = {});

}  // namespace orlicz
