#pragma once

#include <span>
#include <string>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

enum class DeltaCondition { delta2_infinity, delta2_all, delta0 };

std::string_view to_string(DeltaCondition c);

/// Sampled evidence for a growth condition. Verdicts are numeric evidence on
/// the recorded probes, never proofs.
struct DeltaVerdict {
  DeltaCondition condition = DeltaCondition::delta2_infinity;
  bool holds = false;
  std::vector<double> probe_us;
  // ln(phi(lambda u) / phi(u)); NaN where phi(u) = 0 (probe skipped).
  std::vector<double> log_ratios;
  double witness_u = 0;          // probe of the max ratio (delta2) or of the final ratio (delta0)
  double witness_log_ratio = 0;  // ln of that ratio
  double threshold_used = 0;     // C_cap or the divergence threshold
  double lambda_used = 2;
  double u0 = 0;                 // delta2_infinity: probes below u0 ignored
  std::string evidence = "numeric evidence";
};

struct Delta2Options {
  double c_cap = 1e3;
  DeltaCondition condition = DeltaCondition::delta2_infinity;
  double u0 = 1.0;
};

/// phi(2u) <= C phi(u) on the probes and the ratio sequence is not diverging
/// (last ratio <= 1.05 * median of the last three).
/// Probes: increasing, >= 8 points spanning >= 6 decades.
DeltaVerdict delta2_verdict(const OrliczFunction& phi, std::span<const double> u_probe,
                            const Delta2Options& options = {});

/// lim phi(lambda u)/phi(u) = infinity, evidenced by the last three usable
/// ratios increasing and the final ratio above the divergence threshold.
DeltaVerdict delta0_verdict(const OrliczFunction& phi, double lambda,
                            std::span<const double> u_probe, double divergence_threshold = 1e6);

/// 64 log-spaced probes on [1e-8, min(1e12, domain_max / lambda)].
std::vector<double> default_delta_probes(const OrliczFunction& phi, double lambda);

}  // namespace orlicz
