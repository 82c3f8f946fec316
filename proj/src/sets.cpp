#include "measurekit/sets.hpp"

namespace measurekit {

namespace {

[[noreturn]] void kind_mismatch() {
  throw input_error("set kinds do not match (interval union vs atom set)");
}

template <typename Fn>
SetValue binary_op(const SetValue& a, const SetValue& b, Fn&& fn) {
  if (a.index() != b.index()) kind_mismatch();
  if (is_interval_set(a)) {
    return fn(std::get<IntervalUnionSet>(a), std::get<IntervalUnionSet>(b));
  }
  return fn(std::get<AtomSet>(a), std::get<AtomSet>(b));
}

}  // namespace

SetValue set_union(const SetValue& a, const SetValue& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) -> SetValue { return set_union(x, y); });
}

SetValue set_intersect(const SetValue& a, const SetValue& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) -> SetValue { return set_intersect(x, y); });
}

SetValue set_complement(const SetValue& a) {
  return std::visit([](const auto& x) -> SetValue { return set_complement(x); }, a);
}

SetValue set_diff(const SetValue& a, const SetValue& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) -> SetValue { return set_diff(x, y); });
}

SetValue sym_diff(const SetValue& a, const SetValue& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) -> SetValue { return sym_diff(x, y); });
}

bool subset_of(const SetValue& a, const SetValue& b) {
  if (a.index() != b.index()) kind_mismatch();
  if (is_interval_set(a)) {
    return subset_of(std::get<IntervalUnionSet>(a), std::get<IntervalUnionSet>(b));
  }
  return subset_of(std::get<AtomSet>(a), std::get<AtomSet>(b));
}

bool set_empty(const SetValue& a) {
  return std::visit([](const auto& x) { return x.empty(); }, a);
}

std::string set_str(const SetValue& a) {
  return std::visit([](const auto& x) { return set_str(x); }, a);
}

const IntervalUnionSet& as_intervals(const SetValue& a) {
  if (!is_interval_set(a)) throw input_error("expected an interval-union set");
  return std::get<IntervalUnionSet>(a);
}

const AtomSet& as_atoms(const SetValue& a) {
  if (is_interval_set(a)) throw input_error("expected an atom set");
  return std::get<AtomSet>(a);
}

}  // namespace measurekit
