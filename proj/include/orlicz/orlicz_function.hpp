#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orlicz {

// Extended-range scalar used for tabulations and conjugates. Exponential-type
// conjugates reach values far beyond the double range on the default grids.
using wide = long double;

enum class CatalogName {
  power,
  example55,
  phi_r,
  phi_a,
  phi_b,
  linear_spliced,
  valle_poussin_sum,
};

std::string_view to_string(CatalogName name);
CatalogName catalog_name_from_string(std::string_view text);

/// Closed-form Orlicz function selected by name.
///
/// | name              | phi(u)                                   | params       |
/// |-------------------|------------------------------------------|--------------|
/// | power             | u^p                                      | p > 1        |
/// | example55         | u^2/2 on [0,1], u ln u + 1/2 beyond      |              |
/// | phi_r             | u ln^r(1+u)                              | r > 0        |
/// | phi_a             | u sqrt(1 + a ln(1+u))                    | a > 0        |
/// | phi_b             | u exp(sqrt(1 + b ln+ u))                 | b > 0        |
/// | linear_spliced    | u on [0,1], u^2 beyond                   |              |
/// | valle_poussin_sum | sum_n (u - u_n)_+                        | thresholds   |
struct CatalogEntry {
  CatalogName name = CatalogName::power;
  std::map<std::string, double> params;
  std::vector<double> thresholds;  // valle_poussin_sum only

  bool operator==(const CatalogEntry&) const = default;
};

// Validates parameter ranges; throws InputError.
void validate(const CatalogEntry& entry);

/// Piecewise-linear convex function through (u_i, phi_i) nodes.
///
/// A missing origin node is prepended as (0, 0). Right derivatives are the
/// slope of the segment starting at u (right-continuous convention).
class TabulatedConvex {
 public:
  struct Options {
    // Require the supplied grid to reach down to 1e-6 and up to 1e6.
    bool enforce_coverage = true;
    // Extend linearly with the last slope beyond the final node.
    bool allow_extrapolation = false;
  };

  TabulatedConvex(std::vector<wide> u, std::vector<wide> phi, Options options);
  TabulatedConvex(std::vector<wide> u, std::vector<wide> phi)
      : TabulatedConvex(std::move(u), std::move(phi), Options{}) {}

  std::span<const wide> u() const { return u_; }
  std::span<const wide> phi() const { return phi_; }
  std::size_t size() const { return u_.size(); }
  wide grid_max() const { return u_.back(); }
  bool allow_extrapolation() const { return options_.allow_extrapolation; }
  const Options& options() const { return options_; }

  wide value(wide u) const;
  wide right_slope(wide u) const;
  wide last_slope() const;

  bool operator==(const TabulatedConvex& other) const {
    return u_ == other.u_ && phi_ == other.phi_;
  }

 private:
  std::size_t segment(wide u) const;

  std::vector<wide> u_;
  std::vector<wide> phi_;
  Options options_;
};

class OrliczFunction {
 public:
  static OrliczFunction catalog(CatalogEntry entry);
  static OrliczFunction power(double p);
  static OrliczFunction example55();
  static OrliczFunction phi_r(double r);
  static OrliczFunction phi_a(double a);
  static OrliczFunction phi_b(double b);
  static OrliczFunction linear_spliced();
  static OrliczFunction valle_poussin_sum(std::vector<double> thresholds);
  static OrliczFunction tabulated(TabulatedConvex table, bool coercive);

  bool is_catalog() const { return std::holds_alternative<CatalogEntry>(repr_); }
  const CatalogEntry* catalog_entry() const { return std::get_if<CatalogEntry>(&repr_); }
  const TabulatedConvex* table() const;

  // Claim that phi(u)/u -> infinity.
  bool coercive() const { return coercive_; }
  std::string label() const;

  // Largest admissible argument; +inf for catalog entries and extrapolating tables.
  wide domain_max() const;

  wide value(wide u) const;
  wide derivative(wide u) const;

  // ln phi(e^s) and ln phi'(e^s+), computed without forming huge intermediates
  // for catalog entries.
  double log_value(double s) const;
  double log_derivative(double s) const;

  // Same function, with linear extrapolation enabled for tables.
  OrliczFunction with_extrapolation() const;

  bool operator==(const OrliczFunction& other) const;

 private:
  OrliczFunction(std::variant<CatalogEntry, std::shared_ptr<const TabulatedConvex>> repr,
                 bool coercive)
      : repr_(std::move(repr)), coercive_(coercive) {}

  std::variant<CatalogEntry, std::shared_ptr<const TabulatedConvex>> repr_;
  bool coercive_ = true;
};

// phi(u) in double precision; may be +inf when the true value exceeds the double range.
double evaluate(const OrliczFunction& phi, double u);
// phi'(u+) in double precision.
double right_derivative(const OrliczFunction& phi, double u);

// n log-spaced points on [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t n);
// n equally spaced points on [lo, hi].
std::vector<double> lin_spaced(double lo, double hi, std::size_t n);

// 64 log-spaced probes on [1e-8, 1e12].
std::vector<double> default_probe_grid();

// Largest ln u used by default grids for phi: ln(domain_max) for tables,
// otherwise min(4000, s with ln phi(e^s) <= 6000).
double default_log_top(const OrliczFunction& phi);

}  // namespace orlicz
