#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "measurekit/dyadic.hpp"

namespace measurekit {

// Canonical finite union of half-open intervals [a, b) with dyadic endpoints,
// all inside [0, 1). Canonical means: sorted, pairwise disjoint, and no two
// adjacent intervals sharing an endpoint (maximally merged). The empty list
// is the empty set. Values are immutable once built.
class IntervalUnionSet {
 public:
  using Interval = std::pair<Dyadic, Dyadic>;

  IntervalUnionSet() = default;

  // Validates every pair (a < b, both in [0,1]) and canonicalizes.
  static IntervalUnionSet canonical(std::vector<Interval> raw);

  static IntervalUnionSet full() {
    return trusted({{Dyadic::zero(), Dyadic::one()}});
  }
  // The dyadic cell [index/2^level, (index+1)/2^level).
  static IntervalUnionSet cell(int level, std::int64_t index);
  // Union of the cells selected by `mask` (size 2^level).
  static IntervalUnionSet from_cells(int level, const std::vector<char>& mask);

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool empty() const { return ivs_.empty(); }
  std::size_t component_count() const { return ivs_.size(); }

  // Finest endpoint level appearing in the set.
  int max_level() const;

  bool contains(const Rat& point) const;

  // Cell membership mask at `level`; requires max_level() <= level.
  std::vector<char> cell_mask(int level) const;

  friend bool operator==(const IntervalUnionSet&, const IntervalUnionSet&) = default;

 private:
  // Assumes `ivs` already canonical.
  static IntervalUnionSet trusted(std::vector<Interval> ivs) {
    IntervalUnionSet s;
    s.ivs_ = std::move(ivs);
    return s;
  }

  std::vector<Interval> ivs_;
};

IntervalUnionSet set_union(const IntervalUnionSet& a, const IntervalUnionSet& b);
IntervalUnionSet set_intersect(const IntervalUnionSet& a, const IntervalUnionSet& b);
IntervalUnionSet set_complement(const IntervalUnionSet& a);  // within [0,1)
IntervalUnionSet set_diff(const IntervalUnionSet& a, const IntervalUnionSet& b);
IntervalUnionSet sym_diff(const IntervalUnionSet& a, const IntervalUnionSet& b);
bool subset_of(const IntervalUnionSet& a, const IntervalUnionSet& b);

// Total length, exact.
Rat lebesgue(const IntervalUnionSet& a);

std::string set_str(const IntervalUnionSet& a);

}  // namespace measurekit
