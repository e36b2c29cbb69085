#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/conjugate.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

namespace {

// u^2/2 sampled on a fine grid; its conjugate is v^2/2.
OrliczFunction half_square_table() {
  std::vector<wide> u, phi;
  for (int k = 0; k <= 200000; ++k) {
    const wide x = static_cast<wide>(k) * 1e-4L;
    u.push_back(x);
    phi.push_back(x * x / 2);
  }
  TabulatedConvex::Options o;
  o.enforce_coverage = false;
  return OrliczFunction::tabulated(TabulatedConvex(u, phi, o), true);
}

// max over samples of u v - phi(u).
double brute_force_sup(std::span<const wide> u, std::span<const wide> phi, wide v) {
  wide best = 0;
  for (std::size_t i = 0; i < u.size(); ++i) best = std::max(best, u[i] * v - phi[i]);
  return static_cast<double>(best);
}

}  // namespace

TEST_CASE("conjugate of example55 at v = 2") {
  const auto star = conjugate(OrliczFunction::example55());
  CHECK(evaluate(star, 2) == doctest::Approx(std::exp(1.0) - 0.5).epsilon(1e-9));
  CHECK(evaluate(star, 0) == 0);
}

TEST_CASE("half square is self-conjugate") {
  const auto phi = half_square_table();
  const auto star = conjugate(phi);
  CHECK(evaluate(star, 1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fenchel_young_gap(phi, star, 1, 1) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("conjugate of u^2 at v = 2 against brute force") {
  const auto star = conjugate(OrliczFunction::power(2));
  std::vector<wide> u, phi;
  for (int k = 0; k <= 1000000; ++k) {
    const wide x = static_cast<wide>(k) * 4e-6L;
    u.push_back(x);
    phi.push_back(x * x);
  }
  const double oracle = brute_force_sup(u, phi, 2);
  CHECK(oracle == doctest::Approx(1).epsilon(1e-9));
  CHECK(evaluate(star, 2) == doctest::Approx(oracle).epsilon(1e-9));
  // Exact at the dual grid nodes; between nodes the table interpolates linearly.
  const std::vector<wide> grid{0, 0.1, 0.7, 3.0, 11.0};
  const auto on_grid = conjugate(OrliczFunction::power(2), grid);
  for (wide v : grid) {
    const double vd = static_cast<double>(v);
    CHECK(evaluate(on_grid, vd) == doctest::Approx(vd * vd / 4).epsilon(1e-12));
    CHECK(evaluate(star, vd) == doctest::Approx(vd * vd / 4).epsilon(1e-4));
  }
}

TEST_CASE("Fenchel-Young gap examples") {
  const auto e55 = OrliczFunction::example55();
  const auto star = conjugate(e55);
  CHECK(fenchel_young_gap(e55, star, 2, 0) ==
        doctest::Approx(2 * std::log(2.0) + 0.5).epsilon(1e-12));
  const double expected = (3 * std::log(3.0) + 0.5) + (std::exp(1.0) - 0.5) - 6;
  CHECK(fenchel_young_gap(e55, star, 3, 2) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(expected == doctest::Approx(0.0140).epsilon(1e-2));
  CHECK_THROWS_AS(fenchel_young_gap(e55, star, -1, 0), DomainError);
}

TEST_CASE("Fenchel-Young inequality on a probe grid for every catalog entry") {
  const auto us = log_spaced(1e-3, 1e3, 100);
  for (const auto& phi : {OrliczFunction::power(1.5), OrliczFunction::power(2),
                          OrliczFunction::power(4), OrliczFunction::example55(),
                          OrliczFunction::phi_r(0.5), OrliczFunction::phi_r(2),
                          OrliczFunction::phi_a(1), OrliczFunction::phi_b(1),
                          OrliczFunction::linear_spliced()}) {
    const auto star = conjugate(phi);
    const double vmax = std::min(1e3, static_cast<double>(star.domain_max()) * (1 - 1e-12));
    const auto vs = log_spaced(1e-3, vmax, 100);
    double worst = 0;
    for (double u : us) {
      for (double v : vs) {
        worst = std::min(worst, fenchel_young_gap(phi, star, u, v) / (1 + u * v));
      }
    }
    CHECK_MESSAGE(worst >= -1e-9, phi.label());
  }
}

TEST_CASE("conjugate rejects bad input") {
  CHECK_THROWS_AS(conjugate(OrliczFunction::valle_poussin_sum({0, 1, 2})), InputError);
  const std::vector<wide> empty;
  CHECK_THROWS_AS(conjugate(OrliczFunction::power(2), empty), InputError);
  const std::vector<wide> unsorted{0, 2, 1};
  CHECK_THROWS_AS(conjugate(OrliczFunction::power(2), unsorted), InputError);
  const std::vector<wide> negative{-1, 0, 1};
  CHECK_THROWS_AS(conjugate(OrliczFunction::power(2), negative), InputError);
}

TEST_CASE("conjugate output is a convex table vanishing at zero") {
  for (const auto& phi : {OrliczFunction::example55(), OrliczFunction::phi_b(1)}) {
    const auto star = conjugate(phi);
    REQUIRE(star.table() != nullptr);
    CHECK(star.value(0) == 0);
    const auto f = star.table()->phi();
    CHECK(std::is_sorted(f.begin(), f.end()));
  }
}

TEST_CASE("linear sweep equals brute force on random convex tables") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 200 + static_cast<int>(unit(rng) * 300);
    auto nodes = log_spaced(1e-6, 1e6, static_cast<std::size_t>(n));
    std::vector<wide> u{0}, phi{0};
    wide slope = unit(rng);
    for (double x : nodes) {
      phi.push_back(phi.back() + slope * (x - u.back()));
      u.push_back(x);
      slope += unit(rng) * unit(rng) * 3;
    }
    const auto table = OrliczFunction::tabulated(TabulatedConvex(u, phi), true);
    const wide vmax = table.table()->last_slope();
    std::vector<wide> v{0};
    for (int k = 0; k < 300; ++k) v.push_back(unit(rng) * vmax);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const auto star = conjugate(table, v);
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double oracle = brute_force_sup(table.table()->u(), table.table()->phi(), v[k]);
      const double got = static_cast<double>(star.value(v[k]));
      CHECK(std::fabs(got - oracle) <= 1e-9 * std::max(1.0, std::fabs(oracle)));
    }
  }
}

TEST_CASE("derivative image grid") {
  const auto g = derivative_image_grid(OrliczFunction::power(2), -1, 1, 0.5);
  REQUIRE(g.size() == 6);
  CHECK(g.front() == 0);
  CHECK(static_cast<double>(g[3]) == doctest::Approx(2));  // s = 0 lies on the grid
  CHECK(std::is_sorted(g.begin(), g.end()));
}
