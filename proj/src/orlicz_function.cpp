#include "orlicz/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr wide kWideInf = std::numeric_limits<wide>::infinity();

double param(const CatalogEntry& e, const char* key) {
  auto it = e.params.find(key);
  if (it == e.params.end()) {
    throw InputError(std::string("catalog entry ") + std::string(to_string(e.name)) +
                     " requires parameter '" + key + "'");
  }
  return it->second;
}

// ln(1 + e^s) without overflow.
double log1p_exp(double s) {
  if (s > 35.0) return s + std::log1p(std::exp(-s));
  return std::log1p(std::exp(s));
}

// u / (1 + u) as a function of s = ln u.
double logistic(double s) { return 1.0 / (1.0 + std::exp(-s)); }

wide catalog_value(const CatalogEntry& e, wide u) {
  switch (e.name) {
    case CatalogName::power:
      return std::pow(u, static_cast<wide>(param(e, "p")));
    case CatalogName::example55:
      return u <= 1 ? u * u / 2 : u * std::log(u) + wide{0.5};
    case CatalogName::phi_r: {
      const wide r = param(e, "r");
      return u == 0 ? wide{0} : u * std::pow(std::log1p(u), r);
    }
    case CatalogName::phi_a: {
      const wide a = param(e, "a");
      return u * std::sqrt(1 + a * std::log1p(u));
    }
    case CatalogName::phi_b: {
      const wide b = param(e, "b");
      const wide lp = u > 1 ? std::log(u) : wide{0};
      return u * std::exp(std::sqrt(1 + b * lp));
    }
    case CatalogName::linear_spliced:
      return u <= 1 ? u : u * u;
    case CatalogName::valle_poussin_sum: {
      wide sum = 0;
      for (double t : e.thresholds) {
        if (u > t) sum += u - t;
      }
      return sum;
    }
  }
  return 0;
}

wide catalog_derivative(const CatalogEntry& e, wide u) {
  switch (e.name) {
    case CatalogName::power: {
      const wide p = param(e, "p");
      return u == 0 ? wide{0} : p * std::pow(u, p - 1);
    }
    case CatalogName::example55:
      return u < 1 ? u : std::log(u) + 1;
    case CatalogName::phi_r: {
      if (u == 0) return 0;
      const wide r = param(e, "r");
      const wide l = std::log1p(u);
      return std::pow(l, r) + r * u * std::pow(l, r - 1) / (1 + u);
    }
    case CatalogName::phi_a: {
      const wide a = param(e, "a");
      const wide root = std::sqrt(1 + a * std::log1p(u));
      return root + a * u / (2 * (1 + u) * root);
    }
    case CatalogName::phi_b: {
      const wide b = param(e, "b");
      const wide e1 = std::exp(wide{1});
      if (u < 1) return e1;
      const wide root = std::sqrt(1 + b * std::log(u));
      return std::exp(root) * (1 + b / (2 * root));
    }
    case CatalogName::linear_spliced:
      return u < 1 ? wide{1} : 2 * u;
    case CatalogName::valle_poussin_sum: {
      wide count = 0;
      for (double t : e.thresholds) {
        if (u >= t) count += 1;
      }
      return count;
    }
  }
  return 0;
}

double catalog_log_value(const CatalogEntry& e, double s) {
  if (s == -kInf) return -kInf;
  switch (e.name) {
    case CatalogName::power:
      return param(e, "p") * s;
    case CatalogName::example55:
      return s <= 0 ? 2 * s - std::log(2.0) : s + std::log(s + 0.5 * std::exp(-s));
    case CatalogName::phi_r:
      return s + param(e, "r") * std::log(log1p_exp(s));
    case CatalogName::phi_a:
      return s + 0.5 * std::log1p(param(e, "a") * log1p_exp(s));
    case CatalogName::phi_b:
      return s + std::sqrt(1 + param(e, "b") * std::max(s, 0.0));
    case CatalogName::linear_spliced:
      return s <= 0 ? s : 2 * s;
    case CatalogName::valle_poussin_sum: {
      if (s > 11000) return s + std::log(static_cast<double>(e.thresholds.size()));
      return static_cast<double>(std::log(catalog_value(e, std::exp(static_cast<wide>(s)))));
    }
  }
  return 0;
}

double catalog_log_derivative(const CatalogEntry& e, double s) {
  switch (e.name) {
    case CatalogName::power: {
      const double p = param(e, "p");
      return s == -kInf ? -kInf : std::log(p) + (p - 1) * s;
    }
    case CatalogName::example55:
      return s < 0 ? s : std::log(s + 1);
    case CatalogName::phi_r: {
      if (s == -kInf) return -kInf;
      const double r = param(e, "r");
      const double l = log1p_exp(s);
      return r * std::log(l) + std::log1p(r * logistic(s) / l);
    }
    case CatalogName::phi_a: {
      const double a = param(e, "a");
      const double l = s == -kInf ? 0.0 : log1p_exp(s);
      const double w = s == -kInf ? 0.0 : logistic(s);
      return 0.5 * std::log1p(a * l) + std::log1p(a * w / (2 * (1 + a * l)));
    }
    case CatalogName::phi_b: {
      if (s < 0) return 1.0;
      const double root = std::sqrt(1 + param(e, "b") * s);
      return root + std::log1p(param(e, "b") / (2 * root));
    }
    case CatalogName::linear_spliced:
      return s < 0 ? 0.0 : std::log(2.0) + s;
    case CatalogName::valle_poussin_sum: {
      const wide u = s == -kInf ? wide{0} : std::exp(static_cast<wide>(s));
      return static_cast<double>(std::log(catalog_derivative(e, u)));
    }
  }
  return 0;
}

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::string_view to_string(CatalogName name) {
  switch (name) {
    case CatalogName::power: return "power";
    case CatalogName::example55: return "example55";
    case CatalogName::phi_r: return "phi_r";
    case CatalogName::phi_a: return "phi_a";
    case CatalogName::phi_b: return "phi_b";
    case CatalogName::linear_spliced: return "linear_spliced";
    case CatalogName::valle_poussin_sum: return "valle_poussin_sum";
  }
  return "?";
}

CatalogName catalog_name_from_string(std::string_view text) {
  for (auto n : {CatalogName::power, CatalogName::example55, CatalogName::phi_r,
                 CatalogName::phi_a, CatalogName::phi_b, CatalogName::linear_spliced,
                 CatalogName::valle_poussin_sum}) {
    if (to_string(n) == text) return n;
  }
  throw InputError("unknown catalog entry '" + std::string(text) + "'");
}

void validate(const CatalogEntry& e) {
  auto positive = [&](const char* key) {
    const double v = param(e, key);
    if (!(v > 0) || !std::isfinite(v)) {
      throw InputError(std::string(to_string(e.name)) + ": parameter " + key + " must be > 0");
    }
  };
  switch (e.name) {
    case CatalogName::power:
      if (!(param(e, "p") > 1) || !std::isfinite(param(e, "p"))) {
        throw InputError("power: parameter p must be > 1");
      }
      break;
    case CatalogName::phi_r: positive("r"); break;
    case CatalogName::phi_a: positive("a"); break;
    case CatalogName::phi_b: positive("b"); break;
    case CatalogName::example55:
    case CatalogName::linear_spliced:
      break;
    case CatalogName::valle_poussin_sum: {
      const auto& t = e.thresholds;
      if (t.empty() || t.front() != 0.0) {
        throw InputError("valle_poussin_sum: thresholds must start with u1 = 0");
      }
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] >= t[i - 1]) || !std::isfinite(t[i])) {
          throw InputError("valle_poussin_sum: thresholds must be finite and nondecreasing");
        }
      }
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// TabulatedConvex

TabulatedConvex::TabulatedConvex(std::vector<wide> u, std::vector<wide> phi, Options options)
    : options_(options) {
  if (u.size() != phi.size()) throw InputError("tabulated function: u and phi sizes differ");
  if (u.size() < 3) throw InputError("tabulated function: at least 3 grid points required");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(phi[i])) {
      throw InputError("tabulated function: non-finite grid entry");
    }
  }
  if (u.front() < 0) throw InputError("tabulated function: negative u");
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1])) throw InputError("tabulated function: u must be strictly increasing");
  }
  if (options.enforce_coverage && (u.front() > 1e-6L || u.back() < 1e6L)) {
    throw InputError("tabulated function: grid must cover [<=1e-6, >=1e6]");
  }
  if (u.front() == 0) {
    if (phi.front() != 0) throw InputError("tabulated function: phi(0) must be 0");
  } else {
    u.insert(u.begin(), wide{0});
    phi.insert(phi.begin(), wide{0});
  }
  wide prev_slope = -1;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (phi[i] < 0) throw InputError("tabulated function: phi must be nonnegative");
    if (phi[i] < phi[i - 1]) throw InputError("tabulated function: phi must be nondecreasing");
    const wide slope = (phi[i] - phi[i - 1]) / (u[i] - u[i - 1]);
    if (i > 1) {
      const wide scale = std::max(std::fabs(slope), std::fabs(prev_slope));
      if (slope < prev_slope - wide{1e-9} * scale) {
        std::ostringstream os;
        os << "tabulated function: not convex near u = " << static_cast<double>(u[i - 1]);
        throw InputError(os.str());
      }
    }
    prev_slope = slope;
  }
  u_ = std::move(u);
  phi_ = std::move(phi);
}

std::size_t TabulatedConvex::segment(wide u) const {
  auto it = std::upper_bound(u_.begin(), u_.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - u_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  return std::min(idx, u_.size() - 2);
}

wide TabulatedConvex::value(wide u) const {
  if (!(u >= 0)) throw DomainError("tabulated function: argument must be >= 0");
  if (u > u_.back() && !options_.allow_extrapolation) {
    std::ostringstream os;
    os << "tabulated function: u = " << static_cast<double>(u) << " beyond grid max "
       << static_cast<double>(u_.back());
    throw ExtrapolationError(os.str());
  }
  const std::size_t i = segment(u);
  if (u == u_[i]) return phi_[i];
  const wide slope = (phi_[i + 1] - phi_[i]) / (u_[i + 1] - u_[i]);
  return phi_[i] + slope * (u - u_[i]);
}

wide TabulatedConvex::right_slope(wide u) const {
  if (!(u >= 0)) throw DomainError("tabulated function: argument must be >= 0");
  if (u >= u_.back() && !options_.allow_extrapolation) {
    if (u > u_.back()) throw ExtrapolationError("tabulated function: derivative beyond grid");
  }
  const std::size_t i = segment(u);
  return (phi_[i + 1] - phi_[i]) / (u_[i + 1] - u_[i]);
}

wide TabulatedConvex::last_slope() const {
  const std::size_t n = u_.size();
  return (phi_[n - 1] - phi_[n - 2]) / (u_[n - 1] - u_[n - 2]);
}

// ---------------------------------------------------------------------------
// OrliczFunction

OrliczFunction OrliczFunction::catalog(CatalogEntry entry) {
  validate(entry);
  const bool coercive = entry.name != CatalogName::valle_poussin_sum;
  return OrliczFunction(std::move(entry), coercive);
}

OrliczFunction OrliczFunction::power(double p) {
  return catalog({CatalogName::power, {{"p", p}}, {}});
}
OrliczFunction OrliczFunction::example55() { return catalog({CatalogName::example55, {}, {}}); }
OrliczFunction OrliczFunction::phi_r(double r) {
  return catalog({CatalogName::phi_r, {{"r", r}}, {}});
}
OrliczFunction OrliczFunction::phi_a(double a) {
  return catalog({CatalogName::phi_a, {{"a", a}}, {}});
}
OrliczFunction OrliczFunction::phi_b(double b) {
  return catalog({CatalogName::phi_b, {{"b", b}}, {}});
}
OrliczFunction OrliczFunction::linear_spliced() {
  return catalog({CatalogName::linear_spliced, {}, {}});
}
OrliczFunction OrliczFunction::valle_poussin_sum(std::vector<double> thresholds) {
  return catalog({CatalogName::valle_poussin_sum, {}, std::move(thresholds)});
}

OrliczFunction OrliczFunction::tabulated(TabulatedConvex table, bool coercive) {
  return OrliczFunction(std::make_shared<const TabulatedConvex>(std::move(table)), coercive);
}

const TabulatedConvex* OrliczFunction::table() const {
  auto p = std::get_if<std::shared_ptr<const TabulatedConvex>>(&repr_);
  return p ? p->get() : nullptr;
}

std::string OrliczFunction::label() const {
  if (const auto* e = catalog_entry()) {
    std::string out(to_string(e->name));
    if (!e->params.empty()) {
      out += "(";
      bool first = true;
      for (const auto& [k, v] : e->params) {
        if (!first) out += ",";
        out += k + "=" + format_number(v);
        first = false;
      }
      out += ")";
    }
    if (!e->thresholds.empty()) {
      out += "(";
      for (std::size_t i = 0; i < e->thresholds.size(); ++i) {
        if (i) out += ",";
        out += format_number(e->thresholds[i]);
      }
      out += ")";
    }
    return out;
  }
  return "tabulated(n=" + std::to_string(table()->size()) + ")";
}

wide OrliczFunction::domain_max() const {
  if (const auto* t = table()) {
    return t->allow_extrapolation() ? kWideInf : t->grid_max();
  }
  return kWideInf;
}

wide OrliczFunction::value(wide u) const {
  if (!(u >= 0)) throw DomainError("Orlicz function: argument must be >= 0");
  if (const auto* e = catalog_entry()) return catalog_value(*e, u);
  return table()->value(u);
}

wide OrliczFunction::derivative(wide u) const {
  if (!(u >= 0)) throw DomainError("Orlicz function: argument must be >= 0");
  if (const auto* e = catalog_entry()) return catalog_derivative(*e, u);
  return table()->right_slope(u);
}

double OrliczFunction::log_value(double s) const {
  if (std::isnan(s)) throw DomainError("Orlicz function: NaN argument");
  if (const auto* e = catalog_entry()) return catalog_log_value(*e, s);
  const wide u = s == -kInf ? wide{0} : std::exp(static_cast<wide>(s));
  return static_cast<double>(std::log(table()->value(u)));
}

double OrliczFunction::log_derivative(double s) const {
  if (std::isnan(s)) throw DomainError("Orlicz function: NaN argument");
  if (const auto* e = catalog_entry()) return catalog_log_derivative(*e, s);
  const wide u = s == -kInf ? wide{0} : std::exp(static_cast<wide>(s));
  return static_cast<double>(std::log(table()->right_slope(u)));
}

OrliczFunction OrliczFunction::with_extrapolation() const {
  const auto* t = table();
  if (!t || t->allow_extrapolation()) return *this;
  auto options = t->options();
  options.allow_extrapolation = true;
  options.enforce_coverage = false;
  std::vector<wide> u(t->u().begin(), t->u().end());
  std::vector<wide> phi(t->phi().begin(), t->phi().end());
  return tabulated(TabulatedConvex(std::move(u), std::move(phi), options), coercive_);
}

bool OrliczFunction::operator==(const OrliczFunction& other) const {
  if (coercive_ != other.coercive_) return false;
  const auto* a = catalog_entry();
  const auto* b = other.catalog_entry();
  if (a || b) return a && b && *a == *b;
  return table() == other.table() || *table() == *other.table();
}

double evaluate(const OrliczFunction& phi, double u) {
  if (!(u >= 0)) throw DomainError("evaluate: argument must be >= 0");
  return static_cast<double>(phi.value(u));
}

double right_derivative(const OrliczFunction& phi, double u) {
  if (!(u >= 0)) throw DomainError("right_derivative: argument must be >= 0");
  return static_cast<double>(phi.derivative(u));
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0) || !(hi > lo) || n < 2) throw InputError("log_spaced: need 0 < lo < hi, n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> lin_spaced(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n < 2) throw InputError("lin_spaced: need lo < hi, n >= 2");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> default_probe_grid() { return log_spaced(1e-8, 1e12, 64); }

double default_log_top(const OrliczFunction& phi) {
  if (const auto* t = phi.table()) return static_cast<double>(std::log(t->grid_max()));
  constexpr double kTop = 4000.0;
  constexpr double kValueCap = 6000.0;
  if (phi.log_value(kTop) <= kValueCap) return kTop;
  double lo = 0.0;
  double hi = kTop;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi.log_value(mid) <= kValueCap ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace orlicz
