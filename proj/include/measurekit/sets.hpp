#pragma once

#include <variant>

#include "measurekit/atom_set.hpp"
#include "measurekit/interval_set.hpp"

namespace measurekit {

// Runtime-polymorphic measurable set: either an interval union on [0,1) or a
// subset of a finite atom space. Mixed-kind operations are input errors.
using SetValue = std::variant<IntervalUnionSet, AtomSet>;

SetValue set_union(const SetValue& a, const SetValue& b);
SetValue set_intersect(const SetValue& a, const SetValue& b);
SetValue set_complement(const SetValue& a);
SetValue set_diff(const SetValue& a, const SetValue& b);
SetValue sym_diff(const SetValue& a, const SetValue& b);
bool subset_of(const SetValue& a, const SetValue& b);
bool set_empty(const SetValue& a);
std::string set_str(const SetValue& a);

inline bool is_interval_set(const SetValue& a) {
  return std::holds_alternative<IntervalUnionSet>(a);
}

const IntervalUnionSet& as_intervals(const SetValue& a);
const AtomSet& as_atoms(const SetValue& a);

}  // namespace measurekit
