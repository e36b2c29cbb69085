#include "orlicz/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sup_norm(const Family& family, const NormSpec& spec, auto transform) {
  double s = 0;
  for (const auto& f : family) s = std::max(s, norm(transform(f), spec));
  return s;
}

double tail_norm(const Family& family, const NormSpec& spec, double gamma) {
  return sup_norm(family, spec, [gamma](const StepFunction& f) { return truncate_above(f, gamma); });
}

}  // namespace

DecayProfile make_profile(std::string parameter_name, std::vector<double> parameters,
                          std::vector<double> suprema, const DecayOptions& options) {
  if (parameters.size() != suprema.size()) throw InputError("profile: length mismatch");
  DecayProfile p;
  p.parameter_name = std::move(parameter_name);
  p.parameters = std::move(parameters);
  p.suprema = std::move(suprema);
  if (p.suprema.empty()) return p;
  p.final_value = p.suprema.back();
  p.nonincreasing = std::is_sorted(p.suprema.rbegin(), p.suprema.rend());
  p.decays_to_zero =
      p.final_value < options.tol ||
      (p.nonincreasing && p.final_value < options.relative_drop * p.suprema.front());
  return p;
}

DecayProfile equi_integrability_profile(const Family& family, const NormSpec& spec,
                                        std::span<const BlockSet> sets,
                                        const DecayOptions& options) {
  check_family(family);
  if (!nested_decreasing(sets)) throw InputError("equi_integrability_profile: sets not nested");
  std::vector<double> params, sup;
  for (std::size_t n = 0; n < sets.size(); ++n) {
    params.push_back(static_cast<double>(n));
    sup.push_back(sup_norm(family, spec,
                           [&](const StepFunction& f) { return restrict(f, sets[n]); }));
  }
  return make_profile("n", std::move(params), std::move(sup), options);
}

DecayProfile tail_profile(const Family& family, const NormSpec& spec,
                          std::span<const double> gammas, const DecayOptions& options) {
  check_family(family);
  std::vector<double> sup;
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    if (!(gammas[j] >= 0) || (j > 0 && !(gammas[j] > gammas[j - 1]))) {
      throw InputError("tail_profile: gammas must be >= 0 and increasing");
    }
    sup.push_back(tail_norm(family, spec, gammas[j]));
  }
  return make_profile("gamma", {gammas.begin(), gammas.end()}, std::move(sup), options);
}

OrliczFunction valle_poussin_construct(std::span<const double> u) {
  if (u.size() < 2) throw InputError("valle_poussin_construct: at least 2 thresholds required");
  if (u[0] != 0) throw InputError("valle_poussin_construct: u_1 must be 0");
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || u[i] < u[i - 1]) {
      throw InputError("valle_poussin_construct: thresholds must be finite and nondecreasing");
    }
    // u_{n+1} >= 2 u_n for n >= 2 (1-based)
    if (i >= 2 && u[i] < 2 * u[i - 1]) {
      throw InputError("valle_poussin_construct: spacing u_{n+1} >= 2 u_n violated at n = " +
                       std::to_string(i));
    }
  }
  return OrliczFunction::valle_poussin_sum({u.begin(), u.end()});
}

std::vector<double> valle_poussin_thresholds(const Family& family, const NormSpec& spec,
                                             std::size_t count) {
  check_family(family);
  if (count < 2) throw InputError("valle_poussin_thresholds: count must be >= 2");
  std::vector<double> levels{0};
  for (const auto& f : family) {
    for (const auto& b : f.blocks()) levels.push_back(std::fabs(b.value));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<double> tails;
  tails.reserve(levels.size());
  for (double g : levels) tails.push_back(tail_norm(family, spec, g));
  if (tails.front() > 1) {
    throw InputError("valle_poussin_thresholds: family not bounded by 1 in the norm");
  }

  std::vector<double> u{0};
  for (std::size_t n = 2; n <= count; ++n) {
    const double target = 1.0 / static_cast<double>(n * n);
    std::size_t j = 0;
    while (tails[j] > target) ++j;  // the top level always has tail 0
    double un = std::max(levels[j], u.back());
    if (n >= 3) un = std::max(un, 2 * u.back());
    u.push_back(un);
  }
  return u;
}

VallePoussinReport valle_poussin_verify(const OrliczFunction& phi, const Family& family,
                                        const NormSpec& spec) {
  const CatalogEntry* entry = phi.catalog_entry();
  if (!entry || entry->name != CatalogName::valle_poussin_sum) {
    throw InputError("valle_poussin_verify: phi must come from valle_poussin_construct");
  }
  check_family(family);
  VallePoussinReport r;
  r.thresholds = entry->thresholds;
  r.superlinear_ok = true;
  for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double un = r.thresholds[i];
    const double t = tail_norm(family, spec, un);
    r.tail_norms.push_back(t);
    if (t > (1.0 / (n * n)) * (1 + 1e-12)) {
      throw InputError("valle_poussin_verify: tail norm at u_" + std::to_string(i + 1) +
                       " exceeds 1/n^2");
    }
    if (un > 0) {
      const double slope = static_cast<double>(phi.value(un) / un);
      r.slopes.push_back(slope);
      if (slope < n - 2) r.superlinear_ok = false;
    } else {
      r.slopes.push_back(kNaN);
    }
  }
  r.bound = sup_norm(family, spec, [&phi](const StepFunction& f) {
    return map_values(f, [&phi](double v) { return static_cast<double>(phi.value(std::fabs(v))); });
  });
  return r;
}

Remark33Report counterexample_remark_3_3(const NormSpec& spec, const OrliczFunction& phi,
                                         std::size_t n) {
  if (n == 0) throw InputError("counterexample_remark_3_3: n must be >= 1");
  const Family family = disjoint_family({"indicator_train", {}, 0}, n);
  Remark33Report r;
  r.unit_norm = fundamental_function(spec, 1.0);
  r.vp_bound = sup_norm(family, spec, [&phi](const StepFunction& f) {
    return map_values(f, [&phi](double v) { return static_cast<double>(phi.value(std::fabs(v))); });
  });
  auto sets = tail_support_sets(family);
  sets.pop_back();  // the empty set past the last member
  r.equi_profile = equi_integrability_profile(family, spec, sets);
  return r;
}

L1EquivalenceReport disjoint_l1_lower_constant(const Family& family, const NormSpec& spec,
                                               std::size_t random_trials, std::uint64_t seed) {
  check_family(family);
  if (!pairwise_disjoint(family)) {
    throw InputError("disjoint_l1_lower_constant: family is not pairwise disjoint");
  }
  Family normed;
  for (const auto& f : family) {
    if (f.is_zero()) throw InputError("disjoint_l1_lower_constant: zero member");
    normed.push_back(normalize(f, spec));
  }
  const std::size_t n = normed.size();

  L1EquivalenceReport r;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> e(n, 0.0);
    e[k] = 1;
    r.trials.push_back(std::move(e));
  }
  r.trials.emplace_back(n, 1.0);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t t = 0; t < random_trials; ++t) {
    std::vector<double> a(n);
    double s = 0;
    for (auto& x : a) s += (x = expo(rng));
    for (auto& x : a) x /= s;
    r.trials.push_back(std::move(a));
  }

  r.lower_constant = std::numeric_limits<double>::infinity();
  for (const auto& a : r.trials) {
    StepFunction sum = scale(normed[0], a[0]);
    double a1 = std::fabs(a[0]);
    for (std::size_t k = 1; k < n; ++k) {
      sum = add(sum, scale(normed[k], a[k]));
      a1 += std::fabs(a[k]);
    }
    const double ratio = norm(sum, spec) / a1;
    r.ratios.push_back(ratio);
    if (ratio < r.lower_constant) {
      r.lower_constant = ratio;
      r.achieving = a;
    }
    r.upper_constant = std::max(r.upper_constant, ratio);
  }
  r.all_ones_ratio = r.ratios[n];
  return r;
}

CaseSplitReport theorem41_case_split(const Family& family, double p,
                                     const CaseSplitOptions& options) {
  check_family(family);
  if (!(p > 1)) throw InputError("theorem41_case_split: p must be > 1");
  CaseSplitReport r;
  r.p = p;
  r.delta_floor = options.delta_floor;
  r.delta = std::numeric_limits<double>::infinity();
  for (const auto& f : family) {
    r.l1_norms.push_back(l1_norm(f));
    r.lorentz_norms.push_back(lorentz_p1_norm(f, p));
    r.delta = std::min(r.delta, r.l1_norms.back());
  }
  if (r.delta >= options.delta_floor) {
    r.case_number = 1;
    return r;
  }
  r.case_number = 2;
  for (double k : options.ks) {
    if (!(k > 0)) throw InputError("theorem41_case_split: k must be > 0");
    TruncationRow row;
    row.k = k;
    row.l1_lower_bound = 1.0 / (std::pow(2.0, p) * std::pow(k, p - 1));
    for (std::size_t i = 0; i < family.size(); ++i) {
      const double t = lorentz_p1_norm(truncate_above(family[i], k), p);
      row.max_truncated_lorentz = std::max(row.max_truncated_lorentz, t);
      if (t < 0.5) {
        row.violating.push_back(i);
        row.violating_l1.push_back(r.l1_norms[i]);
        if (r.l1_norms[i] < row.l1_lower_bound) row.bound_holds = false;
      }
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace orlicz
