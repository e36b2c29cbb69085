#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

/// Weight w on (0,1] for Lambda_w, given by its antiderivative W(t) = ∫_0^t w
/// with W(0) = 0 and W(1) = 1. The built-in w_p(t) = t^{1/p - 1}/p has
/// W(t) = t^{1/p}.
struct LambdaWeight {
  std::string name = "w_p";
  double p = 2;
  // Custom antiderivative; empty selects w_p.
  std::function<double(double)> antiderivative;

  double W(double t) const;
  bool operator==(const LambdaWeight& other) const {
    return name == other.name && p == other.p && !antiderivative && !other.antiderivative;
  }
};

struct NormSpec;

struct L1Norm {
  bool operator==(const L1Norm&) const = default;
};
struct LpNorm {
  double p = 2;
  bool operator==(const LpNorm&) const = default;
};
struct OrliczNorm {
  OrliczFunction phi;
  bool operator==(const OrliczNorm&) const = default;
};
struct LorentzP1Norm {
  double p = 2;
  bool operator==(const LorentzP1Norm&) const = default;
};
struct LambdaWNorm {
  LambdaWeight w;
  bool operator==(const LambdaWNorm&) const = default;
};
// max(first, second)
struct IntersectionNorm {
  std::shared_ptr<const NormSpec> first;
  std::shared_ptr<const NormSpec> second;
  bool operator==(const IntersectionNorm& other) const;
};

/// Lattice norm selector. Parameters are validated by the factories.
struct NormSpec {
  std::variant<L1Norm, LpNorm, OrliczNorm, LorentzP1Norm, LambdaWNorm, IntersectionNorm> kind;

  static NormSpec l1();
  static NormSpec lp(double p);                    // p >= 1
  static NormSpec orlicz(OrliczFunction phi);
  static NormSpec lorentz_p1(double p);            // p > 1
  static NormSpec lambda_w(LambdaWeight w);
  static NormSpec lambda_w_p(double p);            // p > 1
  static NormSpec intersection(NormSpec first, NormSpec second);

  std::string label() const;
  bool operator==(const NormSpec&) const = default;
};

/// I_phi(f) = Σ phi(|value|) weight, in extended precision.
wide modular(const OrliczFunction& phi, const StepFunction& f);

/// inf{lambda > 0 : I_phi(f/lambda) <= 1}. The bracket [lo, hi] starts at the
/// L1 norm and is widened by doubling/halving; bisection stops when
/// hi - lo <= rel_tol hi and returns hi, so I_phi(f/result) <= 1. Tables are
/// extrapolated linearly beyond their last node. Throws NumericError when no
/// bracket exists.
double luxemburg_norm(const OrliczFunction& phi, const StepFunction& f, double rel_tol = 1e-12);

double l1_norm(const StepFunction& f);
double lp_norm(const StepFunction& f, double p);

/// Σ f*_k (t_k^{1/p} - t_{k-1}^{1/p}) over the rearranged blocks, t_k cumulative.
double lorentz_p1_norm(const StepFunction& f, double p);

/// Σ f*_k (W(t_k) - W(t_{k-1})). Throws InputError when the support of f has
/// measure above 1.
double lambda_w_norm(const StepFunction& f, const LambdaWeight& w);

double norm(const StepFunction& f, const NormSpec& spec);

/// Norm of an indicator of measure t.
double fundamental_function(const NormSpec& spec, double t);

/// f / norm(f). Throws InputError for the zero function.
StepFunction normalize(const StepFunction& f, const NormSpec& spec);

}  // namespace orlicz
