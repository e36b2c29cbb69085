#pragma once

#include <optional>
#include <span>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

struct IndexValue {
  double estimate = 0;
  bool infinite = false;
  // Estimate from the final window exceeds the estimate from an earlier window.
  bool increasing = false;
};

/// Estimates of the growth indices at infinity. Matuszewska–Orlicz indices
/// (alpha, beta) and Simonenko indices (a, b) are filled by their respective
/// estimators; either half may be empty.
struct IndexReport {
  std::optional<IndexValue> a_inf;
  std::optional<IndexValue> alpha_inf;
  std::optional<IndexValue> beta_inf;
  std::optional<IndexValue> b_inf;

  std::vector<double> probe_ts;
  std::vector<double> probe_log_us;  // ln u
  // ln(phi(t u)/phi(u)) per (t, u); NaN where unusable.
  std::vector<std::vector<double>> log_ratio_matrix;
  // ln of the limsup proxy M(t) per t; NaN when no usable u.
  std::vector<double> log_M;
  // u phi'(u)/phi(u) per u; NaN where unusable.
  std::vector<double> simonenko_ratios;
};

struct IndexOptions {
  double infinity_threshold = 50.0;
  std::size_t fit_points = 3;
};

/// 256 equally spaced values of ln u on [ln 1e-8, default_log_top(phi)].
std::vector<double> default_index_log_grid(const OrliczFunction& phi);
/// {2^-6, ..., 2^-1, 2, ..., 2^6}.
std::vector<double> default_t_grid();

/// For each t, M(t) is estimated on the tail half of the usable u grid (u and
/// tu inside the domain, phi(u) > 0): the final value when the tail ends in a
/// strictly monotone run of at least three points (its limit), the tail
/// maximum otherwise. alpha is
/// the least-squares slope through the origin of ln M against ln t on the
/// fit_points smallest t, beta the same on the largest t; crossing estimates
/// (alpha > beta) are pooled to their mean. An index is infinite
/// when its slope exceeds the threshold and is still increasing compared with
/// the estimate from the first three quarters of the grid.
IndexReport matuszewska_indices(const OrliczFunction& phi, std::span<const double> t_grid,
                                std::span<const double> log_u_grid,
                                const IndexOptions& options = {});
IndexReport matuszewska_indices(const OrliczFunction& phi);

/// a = min, b = max of u phi'(u)/phi(u) over the tail half of the usable grid.
/// Each is infinite when it exceeds the threshold and grew compared with the
/// first three quarters of the grid; both are when the tail is nondecreasing
/// and ends above the threshold.
IndexReport simonenko_indices(const OrliczFunction& phi, std::span<const double> log_u_grid,
                              const IndexOptions& options = {});
IndexReport simonenko_indices(const OrliczFunction& phi);

/// Both estimators on the default grids, merged into one report.
IndexReport all_indices(const OrliczFunction& phi, const IndexOptions& options = {});

struct DualityResidual {
  double matuszewska = 0;  // |1/alpha_phi + 1/beta_phi* - 1|
  double simonenko = 0;    // |1/a_phi + 1/b_phi* - 1|
  IndexReport phi_report;
  IndexReport conjugate_report;
};

/// Residuals of the index duality relations, with 1/inf = 0. phi* is the
/// numeric conjugate on its default grid.
DualityResidual index_duality_residual(const OrliczFunction& phi);

/// |u phi'/phi - 1| < tol at the last three usable grid points, with the
/// deviation decreasing along them.
bool simonenko_ratio_criterion(const OrliczFunction& phi, std::span<const double> log_u_grid,
                               double tol = 1e-2);
bool simonenko_ratio_criterion(const OrliczFunction& phi, double tol = 1e-2);

struct LinearNearZero {
  bool holds = false;
  double c = 0;  // min phi(u)/u
  double C = 0;  // max phi(u)/u
  double d = 1;
  std::vector<double> probe_us;
};

/// c u <= phi(d u) <= C u on (u0 1e-6, u0) with d = 1, judged by C/c <= cap.
LinearNearZero linear_near_zero_criterion(const OrliczFunction& phi, double u0,
                                          std::size_t probe_count = 64, double cap = 100.0);

}  // namespace orlicz
