#include "measurekit/interval_set.hpp"

#include <algorithm>
#include <sstream>

namespace measurekit {

IntervalUnionSet IntervalUnionSet::canonical(std::vector<Interval> raw) {
  for (const auto& [a, b] : raw) {
    if (!(a < b)) {
      throw input_error("interval endpoints reversed or degenerate: [" +
                        dyadic_str(a) + "," + dyadic_str(b) + ")");
    }
    // Dyadic::make already confines endpoints to [0,1].
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) {
    if (x.first == y.first) return x.second < y.second;
    return x.first < y.first;
  });
  std::vector<Interval> merged;
  for (auto& iv : raw) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      if (merged.back().second < iv.second) merged.back().second = iv.second;
    } else {
      merged.push_back(iv);
    }
  }
  return trusted(std::move(merged));
}

IntervalUnionSet IntervalUnionSet::cell(int level, std::int64_t index) {
  return trusted({{Dyadic::make(index, level), Dyadic::make(index + 1, level)}});
}

IntervalUnionSet IntervalUnionSet::from_cells(int level, const std::vector<char>& mask) {
  std::vector<Interval> ivs;
  const std::int64_t n = static_cast<std::int64_t>(mask.size());
  std::int64_t i = 0;
  while (i < n) {
    if (!mask[i]) {
      ++i;
      continue;
    }
    std::int64_t j = i;
    while (j < n && mask[j]) ++j;
    ivs.push_back({Dyadic::make(i, level), Dyadic::make(j, level)});
    i = j;
  }
  return trusted(std::move(ivs));
}

int IntervalUnionSet::max_level() const {
  int lev = 0;
  for (const auto& [a, b] : ivs_) {
    lev = std::max({lev, a.level, b.level});
  }
  return lev;
}

bool IntervalUnionSet::contains(const Rat& point) const {
  for (const auto& [a, b] : ivs_) {
    if (point < a.to_rat()) return false;
    if (point < b.to_rat()) return true;
  }
  return false;
}

std::vector<char> IntervalUnionSet::cell_mask(int level) const {
  if (max_level() > level) {
    throw input_error("set endpoints finer than requested cell level");
  }
  std::vector<char> mask(static_cast<std::size_t>(1) << level, 0);
  for (const auto& [a, b] : ivs_) {
    const std::int64_t lo = a.scaled_num(level);
    const std::int64_t hi = b.scaled_num(level);
    for (std::int64_t c = lo; c < hi; ++c) mask[static_cast<std::size_t>(c)] = 1;
  }
  return mask;
}

IntervalUnionSet set_union(const IntervalUnionSet& a, const IntervalUnionSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<IntervalUnionSet::Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalUnionSet::canonical(std::move(all));
}

IntervalUnionSet set_intersect(const IntervalUnionSet& a, const IntervalUnionSet& b) {
  std::vector<IntervalUnionSet::Interval> out;
  const auto& xs = a.intervals();
  const auto& ys = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    const Dyadic lo = std::max(xs[i].first, ys[j].first,
                               [](const Dyadic& p, const Dyadic& q) { return p < q; });
    const Dyadic hi = std::min(xs[i].second, ys[j].second,
                               [](const Dyadic& p, const Dyadic& q) { return p < q; });
    if (lo < hi) out.push_back({lo, hi});
    if (xs[i].second < ys[j].second) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces of canonical inputs stay sorted and disjoint; no revalidation.
  return IntervalUnionSet::canonical(std::move(out));
}

IntervalUnionSet set_complement(const IntervalUnionSet& a) {
  std::vector<IntervalUnionSet::Interval> out;
  Dyadic cursor = Dyadic::zero();
  for (const auto& [lo, hi] : a.intervals()) {
    if (cursor < lo) out.push_back({cursor, lo});
    cursor = hi;
  }
  if (cursor < Dyadic::one()) out.push_back({cursor, Dyadic::one()});
  return IntervalUnionSet::canonical(std::move(out));
}

IntervalUnionSet set_diff(const IntervalUnionSet& a, const IntervalUnionSet& b) {
  return set_intersect(a, set_complement(b));
}

IntervalUnionSet sym_diff(const IntervalUnionSet& a, const IntervalUnionSet& b) {
  return set_union(set_diff(a, b), set_diff(b, a));
}

bool subset_of(const IntervalUnionSet& a, const IntervalUnionSet& b) {
  return set_diff(a, b).empty();
}

Rat lebesgue(const IntervalUnionSet& a) {
  Rat total = 0;
  for (const auto& [lo, hi] : a.intervals()) {
    total += hi.to_rat() - lo.to_rat();
  }
  return total;
}

std::string set_str(const IntervalUnionSet& a) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [lo, hi] : a.intervals()) {
    if (!first) os << " u ";
    first = false;
    os << "[" << dyadic_str(lo) << "," << dyadic_str(hi) << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace measurekit
