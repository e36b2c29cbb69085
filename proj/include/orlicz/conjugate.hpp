#pragma once

#include <span>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

/// Image of a log grid under phi': {0} ∪ {phi'(e^s) : s = s_lo, s_lo + ds, ..., s_hi},
/// sorted and deduplicated. Sampling the dual variable this way places one
/// conjugate node per primal node, so the conjugate is as well resolved as phi.
std::vector<wide> derivative_image_grid(const OrliczFunction& phi, double s_lo, double s_hi,
                                        double ds);

/// Default dual grid: derivative image of ln u in [ln 1e-10, default_log_top(phi)]
/// at step 0.01 for catalog entries, the distinct segment slopes for tables.
std::vector<wide> default_conjugate_grid(const OrliczFunction& phi);

/// Discrete Legendre–Fenchel transform phi*(v) = sup_{u>=0} [uv - phi(u)].
///
/// The maximizing index is nondecreasing in v, so one forward sweep over the
/// primal samples handles the whole (sorted) dual grid. Tables are sampled at
/// their nodes, which makes the result the exact conjugate of the interpolant.
/// Catalog entries are sampled on a dense log grid and each maximizer is then
/// refined inside its bracket by bisection on phi' = v.
///
/// Dual points beyond the largest available slope (where the maximizer would
/// leave the sampled range) are dropped. Throws InputError for non-coercive phi,
/// an empty or unsorted grid, or fewer than 3 surviving points.
OrliczFunction conjugate(const OrliczFunction& phi, std::span<const wide> v_grid);
OrliczFunction conjugate(const OrliczFunction& phi);

/// phi(u) + phi*(v) - uv; nonnegative up to rounding when phistar is the conjugate.
double fenchel_young_gap(const OrliczFunction& phi, const OrliczFunction& phistar, double u,
                         double v);

}  // namespace orlicz
