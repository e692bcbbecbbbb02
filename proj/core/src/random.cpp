#include "conlog/random.hpp"

#include <limits>

namespace conlog {

std::uint64_t Rng::between(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t n = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + x % n;
}

FormalContext random_context(Rng& rng, std::size_t min_objects, std::size_t max_objects,
                             std::size_t min_attributes, std::size_t max_attributes, unsigned density) {
  const std::size_t g = rng.between(min_objects, max_objects);
  const std::size_t m = rng.between(min_attributes, max_attributes);
  std::vector<std::string> objects;
  std::vector<std::string> attributes;
  for (std::size_t i = 0; i < g; ++i) objects.push_back("g" + std::to_string(i + 1));
  for (std::size_t j = 0; j < m; ++j) attributes.push_back("m" + std::to_string(j + 1));
  std::vector<BitSet> rows;
  for (std::size_t i = 0; i < g; ++i) {
    BitSet row(m);
    for (std::size_t j = 0; j < m; ++j) row.set(j, rng.chance(density, 100));
    rows.push_back(std::move(row));
  }
  return FormalContext(std::move(objects), std::move(attributes), rows);
}

namespace {

Sort other(Sort s) { return s == kObjects ? kAttributes : kObjects; }

Formula leaf(Rng& rng, Sort sort, const FormulaShape& shape) {
  std::vector<const VarKey*> pool;
  for (const auto& v : shape.variables) {
    if (v.sort == sort) pool.push_back(&v);
  }
  if (pool.empty() || rng.chance(1, 8)) return rng.chance(1, 2) ? Formula::top(sort) : Formula::bot(sort);
  const VarKey& v = *pool[rng.between(0, pool.size() - 1)];
  return Formula::var(v.name, v.sort);
}

Formula grow(Rng& rng, Sort sort, const FormulaShape& shape, std::size_t depth) {
  if (depth == 0 || rng.chance(1, 5)) return leaf(rng, sort, shape);
  const std::size_t d = depth - 1;
  switch (rng.between(0, 6)) {
    case 0: return Formula::neg(grow(rng, sort, shape, d));
    case 1: return Formula::conj(grow(rng, sort, shape, d), grow(rng, sort, shape, d));
    case 2: return Formula::disj(grow(rng, sort, shape, d), grow(rng, sort, shape, d));
    case 3: return Formula::imp(grow(rng, sort, shape, d), grow(rng, sort, shape, d));
    case 4: return Formula::iff(grow(rng, sort, shape, d), grow(rng, sort, shape, d));
    default: break;
  }
  Formula arg = grow(rng, other(sort), shape, d);
  // Modalities into s2 take s1 arguments (dia, box, boxm) and vice versa.
  const bool to_attributes = sort == kAttributes;
  if (shape.dialect == Dialect::window) return to_attributes ? ts::win(arg) : ts::win_inv(arg);
  if (rng.chance(1, 2)) return to_attributes ? ts::dia(arg) : ts::dia_inv(arg);
  return to_attributes ? ts::box(arg) : ts::box_inv(arg);
}

}  // namespace

Formula random_formula(Rng& rng, Sort sort, const FormulaShape& shape) {
  return grow(rng, sort, shape, shape.depth);
}

Valuation random_valuation(Rng& rng, const SortedFrame& frame, const std::vector<VarKey>& variables) {
  Valuation v;
  for (const auto& key : variables) {
    const std::size_t n = frame.carrier_size(key.sort);
    SortedSubset s{key.sort, BitSet(n)};
    for (std::size_t i = 0; i < n; ++i) s.bits.set(i, rng.chance(1, 2));
    v.emplace(key, std::move(s));
  }
  return v;
}

}  // namespace conlog
