#include "conlog/context.hpp"

#include <set>

#include "conlog/error.hpp"

namespace conlog {

namespace {

void require_distinct(const std::vector<std::string>& names, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw Error(std::string("duplicate ") + what + " name '" + n + "'");
    }
  }
}

void require_operand(Sort expected, const SortedSubset& subset, const FormalContext& context) {
  if (subset.sort != expected) {
    throw SortError("operator expects a subset of sort " + default_sort_name(expected) +
                    ", got " + default_sort_name(subset.sort));
  }
  if (subset.bits.size() != context.carrier_size(expected)) {
    throw DimensionError("subset has " + std::to_string(subset.bits.size()) +
                         " bits, carrier has " +
                         std::to_string(context.carrier_size(expected)));
  }
}

}  // namespace

Sort input_sort(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::plus:
    case OperatorKind::poss:
    case OperatorKind::nec:
      return kObjects;
    default:
      return kAttributes;
  }
}

Sort output_sort(OperatorKind kind) {
  return input_sort(kind) == kObjects ? kAttributes : kObjects;
}

std::string_view operator_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::plus: return "plus";
    case OperatorKind::minus: return "minus";
    case OperatorKind::poss: return "poss";
    case OperatorKind::nec: return "nec";
    case OperatorKind::poss_inv: return "poss_inv";
    case OperatorKind::nec_inv: return "nec_inv";
  }
  return "?";
}

FormalContext::FormalContext(std::vector<std::string> objects,
                             std::vector<std::string> attributes,
                             const std::vector<BitSet>& rows)
    : objects_(std::move(objects)), attributes_(std::move(attributes)) {
  if (objects_.empty() || attributes_.empty()) {
    throw DimensionError("a context needs at least one object and one attribute");
  }
  if (rows.size() != objects_.size()) {
    throw DimensionError("incidence has " + std::to_string(rows.size()) + " rows for " +
                         std::to_string(objects_.size()) + " objects");
  }
  require_distinct(objects_, "object");
  require_distinct(attributes_, "attribute");
  rows_.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != attributes_.size()) {
      throw DimensionError("incidence row has " + std::to_string(r.size()) + " columns for " +
                           std::to_string(attributes_.size()) + " attributes");
    }
    rows_.push_back(r);
  }
  columns_.assign(attributes_.size(), BitSet(objects_.size()));
  for (std::size_t g = 0; g < rows_.size(); ++g) {
    rows_[g].for_each([&](std::size_t m) { columns_[m].set(g); });
  }
}

FormalContext FormalContext::from_rows(std::vector<std::string> objects,
                                       std::vector<std::string> attributes,
                                       const std::vector<std::string>& rows) {
  std::vector<BitSet> bits;
  for (const auto& r : rows) {
    BitSet row(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == 'X') {
        row.set(i);
      } else if (r[i] != '.') {
        throw Error("incidence rows use 'X' and '.' only");
      }
    }
    bits.push_back(std::move(row));
  }
  return FormalContext(std::move(objects), std::move(attributes), bits);
}

std::size_t FormalContext::carrier_size(Sort sort) const {
  return sort == kObjects ? objects_.size() : attributes_.size();
}

const std::vector<std::string>& FormalContext::names(Sort sort) const {
  return sort == kObjects ? objects_ : attributes_;
}

SortedSubset FormalContext::subset(Sort sort, const std::vector<std::string>& names) const {
  SortedSubset out = empty_set(sort);
  for (const auto& n : names) out.bits.set(index_of(sort, n));
  return out;
}

std::size_t FormalContext::index_of(Sort sort, std::string_view name) const {
  const auto& list = names(sort);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == name) return i;
  }
  throw Error("unknown " + std::string(sort == kObjects ? "object" : "attribute") + " '" +
              std::string(name) + "'");
}

SortedSubset apply_operator(OperatorKind kind, const SortedSubset& subset,
                            const FormalContext& context) {
  require_operand(input_sort(kind), subset, context);
  const Sort out_sort = output_sort(kind);
  SortedSubset out = context.empty_set(out_sort);
  const std::size_t n = context.carrier_size(out_sort);
  switch (kind) {
    case OperatorKind::plus:
      out.bits = BitSet::full(n);
      subset.bits.for_each([&](std::size_t g) { out.bits &= context.row(g); });
      break;
    case OperatorKind::minus:
      out.bits = BitSet::full(n);
      subset.bits.for_each([&](std::size_t m) { out.bits &= context.column(m); });
      break;
    case OperatorKind::poss:
      for (std::size_t m = 0; m < n; ++m) out.bits.set(m, context.column(m).intersects(subset.bits));
      break;
    case OperatorKind::nec:
      for (std::size_t m = 0; m < n; ++m) out.bits.set(m, context.column(m).is_subset_of(subset.bits));
      break;
    case OperatorKind::poss_inv:
      for (std::size_t g = 0; g < n; ++g) out.bits.set(g, context.row(g).intersects(subset.bits));
      break;
    case OperatorKind::nec_inv:
      for (std::size_t g = 0; g < n; ++g) out.bits.set(g, context.row(g).is_subset_of(subset.bits));
      break;
  }
  return out;
}

FormalContext complement_context(const FormalContext& context) {
  std::vector<BitSet> rows;
  rows.reserve(context.object_count());
  for (const auto& r : context.rows()) rows.push_back(~r);
  return FormalContext(context.objects(), context.attributes(), rows);
}

SortedSubset complement(const SortedSubset& subset) { return {subset.sort, ~subset.bits}; }

bool duality_check(OperatorKind kind, const SortedSubset& subset, const FormalContext& context) {
  require_operand(input_sort(kind), subset, context);
  switch (kind) {
    case OperatorKind::plus:
      return subset.bits.is_subset_of(
          apply_operator(OperatorKind::minus, apply_operator(kind, subset, context), context).bits);
    case OperatorKind::minus:
      return subset.bits.is_subset_of(
          apply_operator(OperatorKind::plus, apply_operator(kind, subset, context), context).bits);
    case OperatorKind::poss:
    case OperatorKind::nec:
      return apply_operator(OperatorKind::nec, subset, context) ==
             complement(apply_operator(OperatorKind::poss, complement(subset), context));
    case OperatorKind::poss_inv:
    case OperatorKind::nec_inv:
      return apply_operator(OperatorKind::nec_inv, subset, context) ==
             complement(apply_operator(OperatorKind::poss_inv, complement(subset), context));
  }
  return false;
}

std::string format_subset(const SortedSubset& subset, const FormalContext& context) {
  const auto& names = context.names(subset.sort);
  std::string out = "{";
  bool first = true;
  subset.bits.for_each([&](std::size_t i) {
    if (!first) out += ", ";
    out += names[i];
    first = false;
  });
  return out + "}";
}

}  // namespace conlog
