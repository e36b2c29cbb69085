#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/errors.hpp"
#include "orlicz/step_function.hpp"

using namespace orlicz;

namespace {

StepFunction random_function(std::mt19937_64& rng, std::size_t blocks) {
  std::uniform_real_distribution<double> value(-3, 3), weight(0.01, 2);
  std::vector<Block> b;
  for (std::size_t i = 0; i < blocks; ++i) b.push_back({value(rng), weight(rng)});
  return StepFunction(b);
}

// m({|f| > lambda}) summed directly over blocks.
double brute_distribution(const StepFunction& f, double lambda) {
  double m = 0;
  for (const auto& b : f.blocks()) {
    if (std::fabs(b.value) > lambda) m += b.weight;
  }
  return m;
}

}  // namespace

TEST_CASE("construction validates blocks") {
  CHECK_THROWS_AS(StepFunction({{1, 0}}), InputError);
  CHECK_THROWS_AS(StepFunction({{1, -1}}), InputError);
  CHECK_THROWS_AS(StepFunction({{NAN, 1}}), InputError);
  CHECK_THROWS_AS(StepFunction({{1, INFINITY}}), InputError);
  const StepFunction f({{2, 0.5}, {0, 1}, {-3, 0.25}});
  CHECK(f.total_weight() == 1.75);
  CHECK(f.support_weight() == 0.75);
  CHECK(f.max_abs() == 3);
  CHECK_FALSE(f.is_zero());
  CHECK(StepFunction().is_zero());
  CHECK(canonical(f).size() == 2);
}

TEST_CASE("distribution function examples") {
  const StepFunction f({{2, 0.5}, {-1, 1}});
  CHECK(distribution(f, 0) == 1.5);
  CHECK(distribution(f, 1) == 0.5);  // strict inequality
  CHECK(distribution(f, 1.5) == 0.5);
  CHECK(distribution(f, 2) == 0);
}

TEST_CASE("rearrangement sorts, merges and is equimeasurable") {
  const StepFunction f({{1, 0.5}, {-3, 0.25}, {0, 2}, {-1, 0.5}});
  const auto star = rearrangement(f);
  REQUIRE(star.size() == 2);
  CHECK(star[0] == Block{3, 0.25});
  CHECK(star[1] == Block{1, 1.0});

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_function(rng, 1 + trial % 9);
    const auto gs = rearrangement(g);
    for (std::size_t i = 1; i < gs.size(); ++i) CHECK(gs[i - 1].value > gs[i].value);
    for (double lambda : {0.0, 0.1, 0.5, 1.0, 2.0, 2.9}) {
      CHECK(distribution(gs, lambda) == doctest::Approx(brute_distribution(g, lambda)));
    }
  }
}

TEST_CASE("truncation and restriction keep the layout") {
  const StepFunction f({{2, 0.5}, {-1, 1}, {0.5, 3}});
  const auto t = truncate_above(f, 0.75);
  CHECK(same_layout(t, f));
  CHECK(t[0].value == 2);
  CHECK(t[1].value == -1);
  CHECK(t[2].value == 0);
  CHECK(truncate_above(f, 2).is_zero());

  const auto r = restrict(f, {{0, 2}, 0});
  CHECK(same_layout(r, f));
  CHECK(r[1].value == 0);
  CHECK(r[2].value == 0.5);
  CHECK_THROWS_AS(restrict(f, {{3}, 0}), InputError);
  CHECK_THROWS_AS(restrict(f, {{1, 1}, 0}), InputError);
}

TEST_CASE("split blocks preserves the distribution") {
  const StepFunction f({{2, 0.5}, {-1, 1}});
  const auto s = split_blocks(f, 4);
  CHECK(s.size() == 8);
  CHECK(rearrangement(s) == rearrangement(f));
}

TEST_CASE("blockwise arithmetic") {
  const StepFunction f({{2, 0.5}, {-1, 1}});
  const StepFunction g({{1, 0.5}, {3, 1}});
  CHECK(add(f, g) == StepFunction({{3, 0.5}, {2, 1}}));
  CHECK(subtract(f, g) == StepFunction({{1, 0.5}, {-4, 1}}));
  CHECK(multiply(f, g) == StepFunction({{2, 0.5}, {-3, 1}}));
  CHECK(scale(f, -2) == StepFunction({{-4, 0.5}, {2, 1}}));
  CHECK(abs(f) == StepFunction({{2, 0.5}, {1, 1}}));
  CHECK(map_values(f, [](double v) { return v * v; }) == StepFunction({{4, 0.5}, {1, 1}}));
  CHECK_THROWS_AS(add(f, StepFunction({{1, 0.5}})), InputError);
  CHECK_THROWS_AS(multiply(f, StepFunction({{1, 0.5}, {1, 2}})), InputError);
}

TEST_CASE("disjoint family generators") {
  const auto ind = disjoint_family({"indicator_train", {}, 0}, 5);
  CHECK(ind.size() == 5);
  CHECK(same_layout(ind));
  CHECK(pairwise_disjoint(ind));
  for (const auto& f : ind) {
    CHECK(f.support_weight() == 1);
    CHECK(f.max_abs() == 1);
  }

  const auto spikes = disjoint_family({"spike_train", {}, 0}, 4);
  CHECK(pairwise_disjoint(spikes));
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto& f = spikes[k - 1];
    CHECK(f.max_abs() == std::pow(2.0, k));
    CHECK(f.support_weight() == doctest::Approx(std::pow(0.25, k)));
  }

  const auto mixed = disjoint_family({"mixed", {}, 0}, 3);
  CHECK(pairwise_disjoint(mixed));
  CHECK(distribution(mixed[0], 0.25) == doctest::Approx(0.25 + 1));

  const auto rnd1 = disjoint_family({"random", {{"blocks", 4}}, 9}, 6);
  const auto rnd2 = disjoint_family({"random", {{"blocks", 4}}, 9}, 6);
  CHECK(rnd1 == rnd2);
  CHECK(pairwise_disjoint(rnd1));
  for (const auto& f : rnd1) CHECK(f.max_abs() <= 1);

  CHECK_THROWS_AS(disjoint_family({"nope", {}, 0}, 3), InputError);
  CHECK_THROWS_AS(disjoint_family({"indicator_train", {}, 0}, 0), InputError);
  CHECK_THROWS_AS(check_family({}), InputError);
  CHECK_THROWS_AS(check_family({StepFunction({{1, 1}}), StepFunction({{1, 1}, {1, 1}})}),
                  InputError);
}

TEST_CASE("set sequences are nested and end empty") {
  const auto fam = disjoint_family({"indicator_train", {}, 0}, 4);
  const auto tails = tail_support_sets(fam);
  CHECK(tails.size() == 5);
  CHECK(tails.back().indices.empty());
  CHECK(nested_decreasing(tails));

  const auto suffix = suffix_sets(6);
  CHECK(suffix.size() == 7);
  CHECK(suffix.front().indices.size() == 6);
  CHECK(nested_decreasing(suffix));

  const auto halves = halving_sets(8);
  REQUIRE(halves.size() == 5);
  CHECK(halves[1].indices.size() == 4);
  CHECK(halves.back().indices.empty());
  CHECK(nested_decreasing(halves));

  const std::vector<BlockSet> bad{{{1}, 0}, {{0, 1}, 0}};
  CHECK_FALSE(nested_decreasing(bad));
  const std::vector<BlockSet> grows{{{1}, 0.5}, {{1}, 1}};
  CHECK_FALSE(nested_decreasing(grows));
}
