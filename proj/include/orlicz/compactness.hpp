#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct DecayOptions {
  double tol = 1e-6;             // final value below tol decays
  double relative_drop = 1e-3;   // or nonincreasing and final < relative_drop * first
};

/// Sampled curve parameter -> sup over a finite family. The verdict is a
/// thresholded reading of finite data, not a limit.
struct DecayProfile {
  std::string parameter_name;  // "n" (set index) or "gamma"
  std::vector<double> parameters;
  std::vector<double> suprema;
  bool decays_to_zero = false;
  bool nonincreasing = false;
  double final_value = 0;
};

DecayProfile make_profile(std::string parameter_name, std::vector<double> parameters,
                          std::vector<double> suprema, const DecayOptions& options = {});

/// n -> sup_f norm(f chi_{A_n}). Sets must be nested decreasing (InputError otherwise).
DecayProfile equi_integrability_profile(const Family& family, const NormSpec& spec,
                                        std::span<const BlockSet> sets,
                                        const DecayOptions& options = {});

/// gamma -> sup_f norm(f chi_{|f| > gamma}). Gammas must increase.
DecayProfile tail_profile(const Family& family, const NormSpec& spec,
                          std::span<const double> gammas, const DecayOptions& options = {});

/// phi(u) = Σ (u - u_n)_+ over the supplied thresholds: at least 2, u_1 = 0,
/// nondecreasing, u_{n+1} >= 2 u_n for n >= 2. The series is truncated at the
/// list, so superlinearity holds only up to the last threshold.
OrliczFunction valle_poussin_construct(std::span<const double> thresholds);

/// Thresholds u_1 = 0 and, for n = 2..count, the smallest block level gamma with
/// sup_f norm(f chi_{|f| > gamma}) <= 1/n^2, raised to u_n >= 2 u_{n-1}.
/// Throws InputError when sup_f norm(f) > 1.
std::vector<double> valle_poussin_thresholds(const Family& family, const NormSpec& spec,
                                             std::size_t count);

struct VallePoussinReport {
  double bound = 0;                  // sup_f norm(phi(|f|))
  bool superlinear_ok = false;       // phi(u_n)/u_n >= n - 2 wherever u_n > 0
  std::vector<double> thresholds;
  std::vector<double> tail_norms;    // sup_f norm(f chi_{|f| > u_n})
  std::vector<double> slopes;        // phi(u_n)/u_n; NaN at u_n = 0
};

/// Rechecks tail_norms[n] <= 1/n^2 (InputError on failure) and evaluates the
/// composed family. phi must be a valle_poussin_sum catalog entry.
VallePoussinReport valle_poussin_verify(const OrliczFunction& phi, const Family& family,
                                        const NormSpec& spec);

struct Remark33Report {
  double vp_bound = 0;      // sup_f norm(phi(|f|)) = phi(1) norm(chi unit)
  double unit_norm = 0;     // norm of an indicator of measure 1
  DecayProfile equi_profile;  // along the n nonempty tail supports
};

/// Indicator train of n >= 1 unit blocks: bounded modular image, no decay.
Remark33Report counterexample_remark_3_3(const NormSpec& spec, const OrliczFunction& phi,
                                         std::size_t n);

struct L1EquivalenceReport {
  double lower_constant = 0;   // min over trials of norm(Σ a_k f_k) / |a|_1
  double upper_constant = 0;   // max over trials
  double all_ones_ratio = 0;
  std::vector<double> achieving;
  std::vector<std::vector<double>> trials;  // basis vectors, all-ones, then random
  std::vector<double> ratios;
};

/// Members are normalized in spec first. Coefficients: the basis vectors, the
/// all-ones vector and `random_trials` uniform points of the simplex (seeded).
/// Throws InputError for a non-disjoint family or a zero member.
L1EquivalenceReport disjoint_l1_lower_constant(const Family& family, const NormSpec& spec,
                                               std::size_t random_trials,
                                               std::uint64_t seed = kDefaultSeed);

struct TruncationRow {
  double k = 0;
  double max_truncated_lorentz = 0;   // max_f ||f chi_{f > k}||_{p,1}
  double l1_lower_bound = 0;          // 1 / (2^p k^{p-1})
  std::vector<std::size_t> violating;  // members with ||f chi_{f > k}||_{p,1} < 1/2
  std::vector<double> violating_l1;
  bool bound_holds = true;            // violating_l1 >= l1_lower_bound
};

struct CaseSplitReport {
  int case_number = 1;
  double delta = 0;  // min_f ||f||_1
  double delta_floor = 0;
  double p = 2;
  std::vector<double> l1_norms;
  std::vector<double> lorentz_norms;
  std::vector<TruncationRow> rows;  // case 2 only
};

struct CaseSplitOptions {
  double delta_floor = 0.05;
  std::vector<double> ks = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
};

/// Case 1 when min ||f||_1 >= delta_floor. Otherwise case 2: per k, the largest
/// truncated Lorentz norm and, for members with a truncation below 1/2, their
/// L1 norms against 1/(2^p k^{p-1}).
CaseSplitReport theorem41_case_split(const Family& family, double p,
                                     const CaseSplitOptions& options = {});

}  // namespace orlicz
