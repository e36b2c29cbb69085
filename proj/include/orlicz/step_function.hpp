#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

struct Block {
  double value = 0;
  double weight = 0;  // measure of the block, > 0

  bool operator==(const Block&) const = default;
};

/// Simple function on a nonatomic measure space: disjoint blocks of finite
/// measure carrying constant values, plus an implicit zero remainder of
/// infinite measure. Only measures are stored, never coordinates.
///
/// Operations that zero blocks (truncate_above, restrict) keep the block
/// layout, so functions built on a common layout stay blockwise comparable.
class StepFunction {
 public:
  StepFunction() = default;
  // Throws InputError unless every weight is finite and > 0 and every value finite.
  explicit StepFunction(std::vector<Block> blocks);

  std::span<const Block> blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

  double total_weight() const;
  // Measure of {f != 0}.
  double support_weight() const;
  double max_abs() const;
  bool is_zero() const;

  bool operator==(const StepFunction&) const = default;

 private:
  std::vector<Block> blocks_;
};

/// Block positions of a companion function, plus declared measure taken from
/// the zero remainder (which carries no mass for any norm).
struct BlockSet {
  std::vector<std::size_t> indices;
  double extra_weight = 0;

  bool operator==(const BlockSet&) const = default;
};

/// Zero-valued blocks dropped, order preserved.
StepFunction canonical(const StepFunction& f);

/// m({|f| > lambda}); strict inequality makes it right-continuous.
double distribution(const StepFunction& f, double lambda);

/// f*: blocks of |f| sorted by decreasing value, equal values merged, zeros dropped.
StepFunction rearrangement(const StepFunction& f);

/// f chi_{|f| > gamma}, same layout.
StepFunction truncate_above(const StepFunction& f, double gamma);

/// f chi_A, same layout. Throws InputError for out-of-range or repeated indices.
StepFunction restrict(const StepFunction& f, const BlockSet& set);

/// Each block cut into `pieces` equal sub-blocks.
StepFunction split_blocks(const StepFunction& f, std::size_t pieces);

StepFunction scale(const StepFunction& f, double c);
StepFunction abs(const StepFunction& f);

bool same_layout(const StepFunction& f, const StepFunction& g);
// Blockwise sum and product; layouts must match (InputError otherwise).
StepFunction add(const StepFunction& f, const StepFunction& g);
StepFunction subtract(const StepFunction& f, const StepFunction& g);
StepFunction multiply(const StepFunction& f, const StepFunction& g);

/// values replaced by fn(value), weights kept.
template <class Fn>
StepFunction map_values(const StepFunction& f, Fn fn) {
  std::vector<Block> out(f.blocks().begin(), f.blocks().end());
  for (auto& b : out) b.value = fn(b.value);
  return StepFunction(std::move(out));
}

/// Members of a family share one block layout; a member is zero off its own cells.
using Family = std::vector<StepFunction>;

bool same_layout(const Family& family);
// No block is nonzero in two members.
bool pairwise_disjoint(const Family& family);
// Throws InputError unless the family is nonempty with a shared layout.
void check_family(const Family& family);

/// Generator record for disjoint_family.
///
/// | name            | member k = 1..n                                  | params (defaults)                  |
/// |-----------------|--------------------------------------------------|------------------------------------|
/// | indicator_train | (1, 1)                                           |                                    |
/// | spike_train     | (h0 h^k, w0 w^k)                                 | h0=1 h=2 w0=1 w=0.25               |
/// | mixed           | spike (h0 h^k, w0 w^k) and flat (c, m)           | h0=1 h=2 w0=1 w=0.25 c=0.5 m=1     |
/// | random          | `blocks` cells, values in [-1,1], weights (0,1]  | blocks=3                           |
struct GeneratorSpec {
  std::string name;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  bool operator==(const GeneratorSpec&) const = default;
};

/// n pairwise disjoint members on a shared layout. Throws InputError for an
/// unknown generator, bad parameters or n = 0.
Family disjoint_family(const GeneratorSpec& spec, std::size_t n);

/// A_m = cells carrying some member m, m+1, ... for m = 0..n; the last is empty.
std::vector<BlockSet> tail_support_sets(const Family& family);
/// A_m = cells m..size-1 for m = 0..size; the last is empty.
std::vector<BlockSet> suffix_sets(std::size_t size);
/// A_j = the last floor(size / 2^j) cells, j = 0.. until empty.
std::vector<BlockSet> halving_sets(std::size_t size);
/// A_{j+1} ⊆ A_j for every j, with nonincreasing extra weight.
bool nested_decreasing(std::span<const BlockSet> sets);

}  // namespace orlicz
