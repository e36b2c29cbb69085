#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/errors.hpp"
#include "orlicz/norms.hpp"

using namespace orlicz;

namespace {

// Random function on `blocks` cells whose total weight is at most `mass`.
StepFunction random_function(std::mt19937_64& rng, std::size_t blocks, double mass) {
  std::uniform_real_distribution<double> value(-4, 4), share(0.05, 1);
  std::vector<double> w(blocks);
  double total = 0;
  for (auto& x : w) total += (x = share(rng));
  std::vector<Block> b;
  for (std::size_t i = 0; i < blocks; ++i) b.push_back({value(rng), w[i] * mass / total});
  return StepFunction(b);
}

// Same layout as f, values drawn independently.
StepFunction relayout(std::mt19937_64& rng, const StepFunction& f) {
  std::uniform_real_distribution<double> value(-4, 4);
  return map_values(f, [&](double) { return value(rng); });
}

std::vector<NormSpec> all_specs() {
  return {NormSpec::l1(),
          NormSpec::lp(1.5),
          NormSpec::lp(3),
          NormSpec::orlicz(OrliczFunction::power(2)),
          NormSpec::orlicz(OrliczFunction::example55()),
          NormSpec::orlicz(OrliczFunction::phi_b(1)),
          NormSpec::lorentz_p1(2),
          NormSpec::lorentz_p1(3),
          NormSpec::lambda_w_p(2),
          NormSpec::intersection(NormSpec::lorentz_p1(2), NormSpec::l1())};
}

// (1/p) ∫ t^{1/p-1} f*(t) dt with t = s^p, midpoint rule in s.
double lorentz_quadrature(const StepFunction& f, double p, int steps) {
  const auto star = rearrangement(f);
  const double top = std::pow(star.total_weight(), 1 / p);
  const double ds = top / steps;
  double sum = 0;
  for (int i = 0; i < steps; ++i) {
    const double t = std::pow((i + 0.5) * ds, p);
    double cum = 0, v = 0;
    for (const auto& b : star.blocks()) {
      cum += b.weight;
      if (t < cum) {
        v = b.value;
        break;
      }
    }
    sum += v * ds;
  }
  return sum;
}

}  // namespace

TEST_CASE("Luxemburg norm examples") {
  const auto sq = OrliczFunction::power(2);
  const StepFunction chi({{1, 0.25}});
  CHECK(luxemburg_norm(sq, chi) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(luxemburg_norm(sq, StepFunction()) == 0);
  const StepFunction f({{3, 0.2}, {-1, 0.7}});
  CHECK(luxemburg_norm(sq, scale(f, 2)) == doctest::Approx(2 * luxemburg_norm(sq, f)).epsilon(1e-12));
  // For u^p the Luxemburg norm is the Lp norm.
  CHECK(luxemburg_norm(sq, f) == doctest::Approx(lp_norm(f, 2)).epsilon(1e-11));
  CHECK(luxemburg_norm(OrliczFunction::power(3), f) == doctest::Approx(lp_norm(f, 3)).epsilon(1e-11));
}

TEST_CASE("L1 and Lp examples") {
  const StepFunction f({{-3, 0.2}, {1, 0.5}});
  CHECK(l1_norm(f) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(lp_norm(StepFunction({{1, 4}}), 2) == doctest::Approx(2).epsilon(1e-15));
  CHECK(norm(f, NormSpec::lp(1)) == doctest::Approx(l1_norm(f)).epsilon(1e-15));
  const StepFunction g({{0, 0.2}, {0, 0.5}, {2, 1}});
  const StepFunction h({{-3, 0.2}, {1, 0.5}, {0, 1}});
  CHECK(l1_norm(add(g, h)) == l1_norm(g) + l1_norm(h));
  CHECK_THROWS_AS(NormSpec::lp(0.5), InputError);
}

TEST_CASE("Lorentz closed forms and quadrature oracle") {
  CHECK(lorentz_p1_norm(StepFunction({{1, 0.36}}), 2) == doctest::Approx(0.6).epsilon(1e-15));
  const StepFunction f({{2, 1}, {1, 3}});
  CHECK(lorentz_p1_norm(f, 2) == doctest::Approx(3).epsilon(1e-15));
  CHECK(lorentz_quadrature(f, 2, 200000) == doctest::Approx(3).epsilon(1e-4));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_function(rng, 4, 2);
    for (double p : {1.5, 2.0, 4.0}) {
      CHECK(lorentz_p1_norm(g, p) ==
            doctest::Approx(lorentz_quadrature(g, p, 100000)).epsilon(1e-3));
    }
  }
  CHECK_THROWS_AS(NormSpec::lorentz_p1(1), InputError);
}

TEST_CASE("Lambda_w norm") {
  const LambdaWeight w2;
  CHECK(lambda_w_norm(StepFunction({{1, 0.49}}), w2) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(lambda_w_norm(StepFunction(), w2) == 0);
  CHECK_THROWS_AS(lambda_w_norm(StepFunction({{1, 0.6}, {1, 0.6}}), w2), InputError);
  // Zero blocks carry no mass.
  CHECK_NOTHROW(lambda_w_norm(StepFunction({{1, 0.6}, {0, 5}}), w2));
  LambdaWeight linear;
  linear.name = "custom";
  linear.antiderivative = [](double t) { return 2 * t - t * t; };  // w(t) = 2 - 2t
  CHECK(lambda_w_norm(StepFunction({{1, 0.5}}), linear) == doctest::Approx(0.75));
}

TEST_CASE("intersection uses the max") {
  const auto both = NormSpec::intersection(NormSpec::lorentz_p1(2), NormSpec::l1());
  CHECK(norm(StepFunction({{1, 1}}), both) == doctest::Approx(1));
  CHECK(norm(StepFunction({{1, 4}}), both) == doctest::Approx(4));
  CHECK(norm(StepFunction({{1, 0.25}}), both) == doctest::Approx(0.5));
  CHECK(fundamental_function(both, 4) == doctest::Approx(4));
  CHECK(both.label().find("LorentzP1") != std::string::npos);
}

TEST_CASE("Luxemburg bracketing on random catalog functions") {
  const std::vector<OrliczFunction> catalog{
      OrliczFunction::power(1.5), OrliczFunction::power(2),  OrliczFunction::power(4),
      OrliczFunction::example55(), OrliczFunction::phi_r(0.5), OrliczFunction::phi_r(2),
      OrliczFunction::phi_a(1),    OrliczFunction::phi_b(1),   OrliczFunction::linear_spliced()};
  std::mt19937_64 rng(17);
  const double tol = 1e-12;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& phi = catalog[trial % catalog.size()];
    const auto f = random_function(rng, 1 + trial % 6, 0.1 + trial % 5);
    const double n = luxemburg_norm(phi, f, tol);
    CHECK(modular(phi, map_values(f, [n](double v) { return v / n; })) <= 1);
    CHECK(modular(phi, scale(f, 1 / (n * (1 - 10 * tol)))) > 1);
  }
}

TEST_CASE("lattice monotonicity, triangle inequality, rearrangement invariance") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> shrink(0, 1);
  const auto specs = all_specs();
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = random_function(rng, 1 + trial % 7, 0.9);
    const auto g = relayout(rng, f);
    const auto smaller = map_values(f, [&](double v) { return v * shrink(rng); });
    for (const auto& spec : specs) {
      const double nf = norm(f, spec), ng = norm(g, spec);
      CHECK_MESSAGE(norm(add(f, g), spec) <= (nf + ng) * (1 + 1e-9), spec.label());
      CHECK_MESSAGE(norm(smaller, spec) <= nf * (1 + 1e-12), spec.label());
      CHECK_MESSAGE(norm(rearrangement(f), spec) == doctest::Approx(nf).epsilon(1e-10),
                    spec.label());
    }
  }
}

TEST_CASE("Chebyshev inequality") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_function(rng, 1 + trial % 8, 3);
    for (double gamma : {0.01, 0.5, 1.0, 2.5, 3.9, 10.0}) {
      CHECK(distribution(f, gamma) <= l1_norm(f) / gamma * (1 + 1e-15));
    }
  }
}

TEST_CASE("normalize and the fundamental function") {
  const StepFunction f({{3, 0.2}, {-1, 0.7}});
  for (const auto& spec : all_specs()) {
    CHECK_MESSAGE(norm(normalize(f, spec), spec) == doctest::Approx(1).epsilon(1e-11),
                  spec.label());
  }
  CHECK_THROWS_AS(normalize(StepFunction({{0, 1}}), NormSpec::l1()), InputError);
  CHECK(fundamental_function(NormSpec::orlicz(OrliczFunction::power(2)), 0.25) ==
        doctest::Approx(0.5));
  CHECK(fundamental_function(NormSpec::lorentz_p1(3), 8) == doctest::Approx(2));
}
