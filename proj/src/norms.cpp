#include "orlicz/norms.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "orlicz/errors.hpp"

namespace orlicz {

double LambdaWeight::W(double t) const {
  if (antiderivative) return antiderivative(t);
  return std::pow(t, 1.0 / p);
}

bool IntersectionNorm::operator==(const IntersectionNorm& other) const {
  return *first == *other.first && *second == *other.second;
}

NormSpec NormSpec::l1() { return {L1Norm{}}; }

NormSpec NormSpec::lp(double p) {
  if (!(p >= 1) || !std::isfinite(p)) throw InputError("Lp norm: p must be >= 1");
  return {LpNorm{p}};
}

NormSpec NormSpec::orlicz(OrliczFunction phi) { return {OrliczNorm{std::move(phi)}}; }

NormSpec NormSpec::lorentz_p1(double p) {
  if (!(p > 1) || !std::isfinite(p)) throw InputError("LorentzP1 norm: p must be > 1");
  return {LorentzP1Norm{p}};
}

NormSpec NormSpec::lambda_w(LambdaWeight w) {
  if (!w.antiderivative && (!(w.p > 1) || !std::isfinite(w.p))) {
    throw InputError("LambdaW norm: w_p needs p > 1");
  }
  return {LambdaWNorm{std::move(w)}};
}

NormSpec NormSpec::lambda_w_p(double p) {
  LambdaWeight w;
  w.p = p;
  return lambda_w(std::move(w));
}

NormSpec NormSpec::intersection(NormSpec first, NormSpec second) {
  return {IntersectionNorm{std::make_shared<const NormSpec>(std::move(first)),
                           std::make_shared<const NormSpec>(std::move(second))}};
}

std::string NormSpec::label() const {
  std::ostringstream os;
  os.precision(17);
  struct Visitor {
    std::ostringstream& os;
    void operator()(const L1Norm&) const { os << "L1"; }
    void operator()(const LpNorm& n) const { os << "Lp(" << n.p << ")"; }
    void operator()(const OrliczNorm& n) const { os << "Orlicz(" << n.phi.label() << ")"; }
    void operator()(const LorentzP1Norm& n) const { os << "LorentzP1(" << n.p << ")"; }
    void operator()(const LambdaWNorm& n) const {
      if (n.w.antiderivative) {
        os << "LambdaW(" << n.w.name << ")";
      } else {
        os << "LambdaW(w_p, p=" << n.w.p << ")";
      }
    }
    void operator()(const IntersectionNorm& n) const {
      os << "Intersection(" << n.first->label() << ", " << n.second->label() << ")";
    }
  };
  std::visit(Visitor{os}, kind);
  return os.str();
}

namespace {

wide scaled_modular(const OrliczFunction& phi, const StepFunction& f, wide lambda) {
  wide s = 0;
  for (const auto& b : f.blocks()) {
    if (b.value == 0) continue;
    s += phi.value(std::fabs(static_cast<wide>(b.value)) / lambda) * b.weight;
  }
  return s;
}

}  // namespace

wide modular(const OrliczFunction& phi, const StepFunction& f) {
  return scaled_modular(phi, f, 1);
}

double luxemburg_norm(const OrliczFunction& phi, const StepFunction& f, double rel_tol) {
  if (!(rel_tol > 0) || !(rel_tol < 1)) throw InputError("luxemburg_norm: rel_tol must be in (0,1)");
  if (f.is_zero()) return 0;
  const OrliczFunction g = phi.with_extrapolation();
  auto above = [&](wide lambda) { return scaled_modular(g, f, lambda) > 1; };

  wide hi = l1_norm(f);
  wide lo = hi;
  constexpr int kMaxSteps = 4000;
  int steps = 0;
  while (above(hi)) {
    hi *= 2;
    if (++steps > kMaxSteps || !std::isfinite(hi)) {
      throw NumericError("luxemburg_norm: no upper bracket, phi too steep for this f");
    }
  }
  if (hi == lo) {
    lo = hi / 2;
    steps = 0;
    while (!above(lo)) {
      hi = lo;
      lo /= 2;
      if (++steps > kMaxSteps || !(lo > 0)) {
        throw NumericError("luxemburg_norm: no lower bracket, phi degenerate for this f");
      }
    }
  } else {
    lo = hi / 2;
  }
  for (int i = 0; i < 400 && hi - lo > rel_tol * hi; ++i) {
    const wide mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? lo : hi) = mid;
  }
  // Round up so that I_phi(f / result) <= 1 also holds for the double result.
  double result = static_cast<double>(hi);
  for (int i = 0; i < 64; ++i) {
    if (result >= hi && modular(g, map_values(f, [result](double v) { return v / result; })) <= 1) {
      break;
    }
    result = std::nextafter(result, std::numeric_limits<double>::infinity());
  }
  return result;
}

double l1_norm(const StepFunction& f) {
  double s = 0;
  for (const auto& b : f.blocks()) s += std::fabs(b.value) * b.weight;
  return s;
}

double lp_norm(const StepFunction& f, double p) {
  if (!(p >= 1)) throw InputError("lp_norm: p must be >= 1");
  if (p == 1) return l1_norm(f);
  const double m = f.max_abs();
  if (m == 0) return 0;
  double s = 0;
  for (const auto& b : f.blocks()) s += std::pow(std::fabs(b.value) / m, p) * b.weight;
  return m * std::pow(s, 1.0 / p);
}

namespace {

template <class W>
double rearranged_integral(const StepFunction& f, W antiderivative) {
  const StepFunction r = rearrangement(f);
  double t = 0, prev = 0, s = 0;
  for (const auto& b : r.blocks()) {
    t += b.weight;
    const double cur = antiderivative(t);
    s += b.value * (cur - prev);
    prev = cur;
  }
  return s;
}

}  // namespace

double lorentz_p1_norm(const StepFunction& f, double p) {
  if (!(p > 1)) throw InputError("lorentz_p1_norm: p must be > 1");
  return rearranged_integral(f, [p](double t) { return std::pow(t, 1.0 / p); });
}

double lambda_w_norm(const StepFunction& f, const LambdaWeight& w) {
  if (f.support_weight() > 1 + 1e-12) {
    throw InputError("lambda_w_norm: support of f exceeds the unit interval");
  }
  return rearranged_integral(f, [&w](double t) { return w.W(std::min(t, 1.0)); });
}

double norm(const StepFunction& f, const NormSpec& spec) {
  struct Visitor {
    const StepFunction& f;
    double operator()(const L1Norm&) const { return l1_norm(f); }
    double operator()(const LpNorm& n) const { return lp_norm(f, n.p); }
    double operator()(const OrliczNorm& n) const { return luxemburg_norm(n.phi, f); }
    double operator()(const LorentzP1Norm& n) const { return lorentz_p1_norm(f, n.p); }
    double operator()(const LambdaWNorm& n) const { return lambda_w_norm(f, n.w); }
    double operator()(const IntersectionNorm& n) const {
      return std::max(norm(f, *n.first), norm(f, *n.second));
    }
  };
  return std::visit(Visitor{f}, spec.kind);
}

double fundamental_function(const NormSpec& spec, double t) {
  if (!(t >= 0)) throw InputError("fundamental_function: measure must be >= 0");
  if (t == 0) return 0;
  return norm(StepFunction({{1.0, t}}), spec);
}

StepFunction normalize(const StepFunction& f, const NormSpec& spec) {
  const double n = norm(f, spec);
  if (!(n > 0)) throw InputError("normalize: zero function has no normalization");
  return scale(f, 1.0 / n);
}

}  // namespace orlicz
