#include "orlicz/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/errors.hpp"

namespace orlicz {

StepFunction::StepFunction(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (!std::isfinite(b.value)) throw InputError("step function: values must be finite");
    if (!(b.weight > 0) || !std::isfinite(b.weight)) {
      throw InputError("step function: weights must be finite and > 0");
    }
  }
}

double StepFunction::total_weight() const {
  double s = 0;
  for (const auto& b : blocks_) s += b.weight;
  return s;
}

double StepFunction::support_weight() const {
  double s = 0;
  for (const auto& b : blocks_) {
    if (b.value != 0) s += b.weight;
  }
  return s;
}

double StepFunction::max_abs() const {
  double m = 0;
  for (const auto& b : blocks_) m = std::max(m, std::fabs(b.value));
  return m;
}

bool StepFunction::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.value == 0; });
}

StepFunction canonical(const StepFunction& f) {
  std::vector<Block> out;
  for (const auto& b : f.blocks()) {
    if (b.value != 0) out.push_back(b);
  }
  return StepFunction(std::move(out));
}

double distribution(const StepFunction& f, double lambda) {
  double d = 0;
  for (const auto& b : f.blocks()) {
    if (std::fabs(b.value) > lambda) d += b.weight;
  }
  return d;
}

StepFunction rearrangement(const StepFunction& f) {
  std::vector<Block> sorted;
  for (const auto& b : f.blocks()) {
    if (b.value != 0) sorted.push_back({std::fabs(b.value), b.weight});
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Block& x, const Block& y) { return x.value > y.value; });
  std::vector<Block> merged;
  for (const auto& b : sorted) {
    if (!merged.empty() && merged.back().value == b.value) {
      merged.back().weight += b.weight;
    } else {
      merged.push_back(b);
    }
  }
  return StepFunction(std::move(merged));
}

StepFunction truncate_above(const StepFunction& f, double gamma) {
  return map_values(f, [gamma](double v) { return std::fabs(v) > gamma ? v : 0.0; });
}

StepFunction restrict(const StepFunction& f, const BlockSet& set) {
  std::vector<char> keep(f.size(), 0);
  for (std::size_t i : set.indices) {
    if (i >= f.size()) throw InputError("restrict: block index out of range");
    if (keep[i]) throw InputError("restrict: repeated block index");
    keep[i] = 1;
  }
  std::vector<Block> out(f.blocks().begin(), f.blocks().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!keep[i]) out[i].value = 0;
  }
  return StepFunction(std::move(out));
}

StepFunction split_blocks(const StepFunction& f, std::size_t pieces) {
  if (pieces == 0) throw InputError("split_blocks: pieces must be >= 1");
  std::vector<Block> out;
  out.reserve(f.size() * pieces);
  for (const auto& b : f.blocks()) {
    const double w = b.weight / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) out.push_back({b.value, w});
  }
  return StepFunction(std::move(out));
}

StepFunction scale(const StepFunction& f, double c) {
  return map_values(f, [c](double v) { return c * v; });
}

StepFunction abs(const StepFunction& f) {
  return map_values(f, [](double v) { return std::fabs(v); });
}

bool same_layout(const StepFunction& f, const StepFunction& g) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].weight != g[i].weight) return false;
  }
  return true;
}

namespace {

template <class Op>
StepFunction blockwise(const StepFunction& f, const StepFunction& g, Op op) {
  if (!same_layout(f, g)) throw InputError("blockwise operation: block layouts differ");
  std::vector<Block> out(f.blocks().begin(), f.blocks().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i].value = op(f[i].value, g[i].value);
  return StepFunction(std::move(out));
}

double param(const GeneratorSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

// Member k occupies cells [k * per, (k + 1) * per) of the shared layout.
Family place_disjoint(const std::vector<std::vector<Block>>& parts) {
  std::vector<Block> layout;
  for (const auto& p : parts) layout.insert(layout.end(), p.begin(), p.end());
  Family family;
  std::size_t offset = 0;
  for (const auto& p : parts) {
    std::vector<Block> cells = layout;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i < offset || i >= offset + p.size()) cells[i].value = 0;
    }
    offset += p.size();
    family.emplace_back(std::move(cells));
  }
  return family;
}

}  // namespace

StepFunction add(const StepFunction& f, const StepFunction& g) {
  return blockwise(f, g, [](double a, double b) { return a + b; });
}

StepFunction subtract(const StepFunction& f, const StepFunction& g) {
  return blockwise(f, g, [](double a, double b) { return a - b; });
}

StepFunction multiply(const StepFunction& f, const StepFunction& g) {
  return blockwise(f, g, [](double a, double b) { return a * b; });
}

bool same_layout(const Family& family) {
  for (std::size_t k = 1; k < family.size(); ++k) {
    if (!same_layout(family[0], family[k])) return false;
  }
  return true;
}

bool pairwise_disjoint(const Family& family) {
  if (!same_layout(family)) return false;
  if (family.empty()) return true;
  for (std::size_t i = 0; i < family[0].size(); ++i) {
    int owners = 0;
    for (const auto& f : family) owners += f[i].value != 0;
    if (owners > 1) return false;
  }
  return true;
}

void check_family(const Family& family) {
  if (family.empty()) throw InputError("family: must contain at least one function");
  if (!same_layout(family)) throw InputError("family: members must share one block layout");
}

Family disjoint_family(const GeneratorSpec& spec, std::size_t n) {
  if (n == 0) throw InputError("disjoint_family: n must be >= 1");
  std::vector<std::vector<Block>> parts(n);
  if (spec.name == "indicator_train") {
    for (auto& p : parts) p = {{1.0, 1.0}};
  } else if (spec.name == "spike_train" || spec.name == "mixed") {
    const double h0 = param(spec, "h0", 1), h = param(spec, "h", 2);
    const double w0 = param(spec, "w0", 1), w = param(spec, "w", 0.25);
    const double c = param(spec, "c", 0.5), m = param(spec, "m", 1);
    for (std::size_t k = 1; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      parts[k - 1] = {{h0 * std::pow(h, kk), w0 * std::pow(w, kk)}};
      if (spec.name == "mixed") parts[k - 1].push_back({c, m});
    }
  } else if (spec.name == "random") {
    const double blocks = param(spec, "blocks", 3);
    if (!(blocks >= 1) || blocks != std::floor(blocks)) {
      throw InputError("disjoint_family: random needs an integer blocks >= 1");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    for (auto& p : parts) {
      for (int j = 0; j < static_cast<int>(blocks); ++j) {
        double v = 0;
        while (v == 0) v = value(rng);
        double m = 0;
        while (m == 0) m = weight(rng);
        p.push_back({v, m});
      }
    }
  } else {
    throw InputError("disjoint_family: unknown generator '" + spec.name + "'");
  }
  for (const auto& p : parts) {
    for (const auto& b : p) {
      if (!(b.weight > 0) || !std::isfinite(b.weight) || !std::isfinite(b.value)) {
        throw InputError("disjoint_family: generator parameters give invalid blocks");
      }
    }
  }
  return place_disjoint(parts);
}

std::vector<BlockSet> tail_support_sets(const Family& family) {
  check_family(family);
  const std::size_t cells = family[0].size();
  // Last member owning each cell; cells owned by nobody belong to no tail set.
  std::vector<std::ptrdiff_t> owner(cells, -1);
  for (std::size_t k = 0; k < family.size(); ++k) {
    for (std::size_t i = 0; i < cells; ++i) {
      if (family[k][i].value != 0) owner[i] = static_cast<std::ptrdiff_t>(k);
    }
  }
  std::vector<BlockSet> sets;
  for (std::size_t m = 0; m <= family.size(); ++m) {
    BlockSet s;
    for (std::size_t i = 0; i < cells; ++i) {
      if (owner[i] >= static_cast<std::ptrdiff_t>(m)) s.indices.push_back(i);
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

std::vector<BlockSet> suffix_sets(std::size_t size) {
  std::vector<BlockSet> sets;
  for (std::size_t m = 0; m <= size; ++m) {
    BlockSet s;
    for (std::size_t i = m; i < size; ++i) s.indices.push_back(i);
    sets.push_back(std::move(s));
  }
  return sets;
}

std::vector<BlockSet> halving_sets(std::size_t size) {
  std::vector<BlockSet> sets;
  for (std::size_t keep = size;; keep /= 2) {
    BlockSet s;
    for (std::size_t i = size - keep; i < size; ++i) s.indices.push_back(i);
    sets.push_back(std::move(s));
    if (keep == 0) break;
  }
  return sets;
}

bool nested_decreasing(std::span<const BlockSet> sets) {
  for (std::size_t j = 1; j < sets.size(); ++j) {
    std::vector<std::size_t> prev = sets[j - 1].indices;
    std::vector<std::size_t> cur = sets[j].indices;
    std::sort(prev.begin(), prev.end());
    std::sort(cur.begin(), cur.end());
    if (!std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) return false;
    if (sets[j].extra_weight > sets[j - 1].extra_weight) return false;
  }
  return true;
}

}  // namespace orlicz
