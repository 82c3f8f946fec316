#include "measurekit/family.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

namespace measurekit {
namespace {

// Caps keep materialized enumerations and search tables within memory budget.
constexpr std::int64_t kMaxMaterializedItems = std::int64_t{1} << 20;
constexpr int kMaxExhaustiveLevel = 10;
constexpr int kMaxAtomCount = 16;

// Endpoint tuple of an interval set scaled to level-L grid units:
// (a1, b1, a2, b2, ...). Requires every endpoint to lie on the level-L grid.
std::vector<std::int64_t> endpoint_tuple(const IntervalUnionSet& set, int level) {
  std::vector<std::int64_t> tuple;
  tuple.reserve(set.intervals().size() * 2);
  for (const auto& iv : set.intervals()) {
    if (iv.first.level > level || iv.second.level > level) {
      throw input_error("set endpoints are finer than the family grid (level " +
                        std::to_string(level) + ")");
    }
    tuple.push_back(iv.first.scaled_num(level));
    tuple.push_back(iv.second.scaled_num(level));
  }
  return tuple;
}

std::int64_t tuple_cell_count(const std::vector<std::int64_t>& tuple) {
  std::int64_t cells = 0;
  for (std::size_t i = 0; i + 1 < tuple.size(); i += 2) {
    cells += tuple[i + 1] - tuple[i];
  }
  return cells;
}

struct OrderKey {
  std::int64_t cells;
  std::vector<std::int64_t> tuple;

  friend bool operator<(const OrderKey& a, const OrderKey& b) {
    if (a.cells != b.cells) return a.cells < b.cells;
    return a.tuple < b.tuple;
  }
  friend bool operator==(const OrderKey& a, const OrderKey& b) = default;
};

OrderKey interval_key(const IntervalUnionSet& set, int level) {
  auto tuple = endpoint_tuple(set, level);
  return {tuple_cell_count(tuple), std::move(tuple)};
}

OrderKey atom_key(const AtomSet& set) {
  std::vector<std::int64_t> tuple;
  for (int m : set.members()) tuple.push_back(m);
  return {static_cast<std::int64_t>(tuple.size()), std::move(tuple)};
}

OrderKey member_key(const SetValue& set, const GeneratingFamily& family) {
  if (family.interval_kind()) {
    return interval_key(as_intervals(set), family.level());
  }
  return atom_key(as_atoms(set));
}

// Binomial coefficients C(0..n, 0..n) as exact integers.
std::vector<std::vector<BigInt>> binomial_table(int n) {
  std::vector<std::vector<BigInt>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, BigInt(0));
    c[i][0] = 1;
    c[i][i] = 1;
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

const BigInt& choose(const std::vector<std::vector<BigInt>>& c, std::int64_t n,
                     std::int64_t k) {
  static const BigInt kZero(0);
  if (k < 0 || n < 0 || k > n) return kZero;
  return c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Number of cell subsets of an n-cell grid whose endpoint tuple uses exactly
// t cells and at most b runs: sum over j <= b of C(n+1, 2j) counts all
// boundary tuples; restricted to fixed t it is C(t-1, j-1) * C(n-t+1, j)
// (compositions of t into j runs times gap placements).
BigInt count_sets_with_cells(int n, std::int64_t t, int max_runs,
                             const std::vector<std::vector<BigInt>>& c) {
  if (t == 0) return 1;
  BigInt total = 0;
  for (std::int64_t j = 1; j <= max_runs && j <= t; ++j) {
    total += choose(c, t - 1, j - 1) * choose(c, n - t + 1, j);
  }
  return total;
}

}  // namespace

GeneratingFamily GeneratingFamily::enumerate(int level, int max_components) {
  if (level < 0 || level > Dyadic::kMaxLevel) {
    throw input_error("family level out of range: " + std::to_string(level));
  }
  if (max_components < 1) {
    throw input_error("family component bound must be positive");
  }
  const int n = 1 << level;
  auto binom = binomial_table(n + 1);

  BigInt total = 1;
  for (std::int64_t t = 1; t <= n; ++t) {
    total += count_sets_with_cells(n, t, max_components, binom);
  }
  if (total > kMaxMaterializedItems) {
    throw input_error("family too large to enumerate (" + total.str() +
                      " members)");
  }

  GeneratingFamily family;
  family.kind_ = FamilyKind::kIntervalExplicit;
  family.level_ = level;
  family.max_components_ = max_components;
  family.items_.reserve(static_cast<std::size_t>(total));

  // Generate every boundary tuple (a1 < b1 < a2 < ... ) with at most
  // max_components runs, then sort into enumeration order.
  std::vector<IntervalUnionSet::Interval> runs;
  std::vector<std::pair<OrderKey, SetValue>> keyed;
  keyed.reserve(static_cast<std::size_t>(total));

  auto emit = [&]() {
    IntervalUnionSet set = IntervalUnionSet::canonical(runs);
    OrderKey key = interval_key(set, level);
    keyed.emplace_back(std::move(key), SetValue(std::move(set)));
  };

  // extend(start): append runs beginning at boundary >= start.
  auto extend = [&](auto&& self, std::int64_t start) -> void {
    emit();
    if (static_cast<int>(runs.size()) == max_components) return;
    for (std::int64_t a = start; a < n; ++a) {
      for (std::int64_t b = a + 1; b <= n; ++b) {
        runs.push_back({Dyadic::make(a, level), Dyadic::make(b, level)});
        self(self, b + 1);
        runs.pop_back();
      }
    }
  };
  extend(extend, 0);

  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [key, set] : keyed) family.items_.push_back(std::move(set));
  return family;
}

GeneratingFamily GeneratingFamily::exhaustive(int level) {
  if (level < 0 || level > kMaxExhaustiveLevel) {
    throw input_error("exhaustive family level out of range: " +
                      std::to_string(level));
  }
  GeneratingFamily family;
  family.kind_ = FamilyKind::kIntervalExhaustive;
  family.level_ = level;
  family.max_components_ = ((1 << level) + 1) / 2;
  return family;
}

GeneratingFamily GeneratingFamily::atom_subsets(int atom_count) {
  if (atom_count < 1 || atom_count > kMaxAtomCount) {
    throw input_error("atom family size out of range: " +
                      std::to_string(atom_count));
  }
  GeneratingFamily family;
  family.kind_ = FamilyKind::kAtomSubsets;
  family.atom_count_ = atom_count;

  const int n = atom_count;
  std::vector<std::pair<OrderKey, SetValue>> keyed;
  keyed.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<char> bits(n, 0);
    for (int i = 0; i < n; ++i) bits[i] = (mask >> i) & 1 ? 1 : 0;
    AtomSet set = AtomSet::from_mask(bits);
    OrderKey key = atom_key(set);
    keyed.emplace_back(std::move(key), SetValue(std::move(set)));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  family.items_.reserve(keyed.size());
  for (auto& [key, set] : keyed) family.items_.push_back(std::move(set));
  return family;
}

int GeneratingFamily::cell_count() const {
  return interval_kind() ? (1 << level_) : atom_count_;
}

BigInt GeneratingFamily::size() const {
  if (materialized()) return BigInt(items_.size());
  BigInt one = 1;
  return one << (std::size_t{1} << level_);
}

const std::vector<SetValue>& GeneratingFamily::items() const {
  if (!materialized()) {
    throw input_error("exhaustive family members are not materialized");
  }
  return items_;
}

BigInt GeneratingFamily::index_of(const SetValue& member) const {
  OrderKey key = member_key(member, *this);
  if (materialized()) {
    auto it = std::lower_bound(
        items_.begin(), items_.end(), key,
        [this](const SetValue& item, const OrderKey& k) {
          return member_key(item, *this) < k;
        });
    if (it == items_.end() || !(member_key(*it, *this) == key)) {
      throw input_error("set is not a member of the family");
    }
    return BigInt(it - items_.begin()) + 1;
  }

  // Exhaustive kind: rank = 1 + (number of members ordered before `member`).
  // Members with fewer cells all come first; within the same cell count the
  // endpoint tuples are compared lexicographically, so we count tuples that
  // branch below ours at each position.
  const int n = cell_count();
  const std::int64_t t = key.cells;
  auto binom = binomial_table(n);

  BigInt rank = 0;
  for (std::int64_t tt = 0; tt < t; ++tt) rank += choose(binom, n, tt);

  // Remaining cells to place before the current tuple element is fixed.
  std::int64_t remaining = t;
  for (std::size_t j = 0; j < key.tuple.size(); ++j) {
    const std::int64_t e = key.tuple[j];
    if (j % 2 == 0) {
      // Run start: candidates v < e with cells lower..v-1 excluded, v
      // included, and any remaining-1 cells from v+1..n-1.
      const std::int64_t lower = (j == 0) ? 0 : key.tuple[j - 1] + 1;
      for (std::int64_t v = lower; v < e; ++v) {
        rank += choose(binom, n - 1 - v, remaining - 1);
      }
      --remaining;  // cell e joined the set
    } else {
      // Run end: the run opened at key.tuple[j-1]; cell key.tuple[j-1] is
      // already counted. Closing at v < e includes cells p..v-1, excludes v,
      // and leaves remaining-(v-p) cells free in v+1..n-1.
      const std::int64_t p = key.tuple[j - 1] + 1;
      for (std::int64_t v = p; v < e; ++v) {
        rank += choose(binom, n - 1 - v, remaining - (v - p));
      }
      remaining -= e - p;  // cells p..e-1 joined the set
    }
  }
  return rank + 1;
}

FamilyEvaluator::FamilyEvaluator(const GeneratingFamily& family,
                                 std::vector<Rat> cell_masses)
    : family_(family), masses_(std::move(cell_masses)) {
  if (static_cast<int>(masses_.size()) != family_.cell_count()) {
    throw input_error("mass vector has " + std::to_string(masses_.size()) +
                      " entries but the family has " +
                      std::to_string(family_.cell_count()) + " cells");
  }
}

SetValue FamilyEvaluator::set_from_cells(const std::vector<char>& mask) const {
  if (family_.interval_kind()) {
    return SetValue(IntervalUnionSet::from_cells(family_.level(), mask));
  }
  return SetValue(AtomSet::from_mask(mask));
}

void FamilyEvaluator::ensure_values() {
  if (values_ready_) return;
  const auto& items = family_.items();
  values_.reserve(items.size());
  if (family_.interval_kind()) {
    // Prefix sums over cell masses make each member a few subtractions.
    const int level = family_.level();
    std::vector<Rat> prefix(masses_.size() + 1, Rat(0));
    for (std::size_t i = 0; i < masses_.size(); ++i) {
      prefix[i + 1] = prefix[i] + masses_[i];
    }
    for (const auto& item : items) {
      Rat value = 0;
      for (const auto& iv : as_intervals(item).intervals()) {
        value += prefix[static_cast<std::size_t>(iv.second.scaled_num(level))] -
                 prefix[static_cast<std::size_t>(iv.first.scaled_num(level))];
      }
      values_.push_back(std::move(value));
    }
  } else {
    for (const auto& item : items) {
      Rat value = 0;
      for (int m : as_atoms(item).members()) {
        value += masses_[static_cast<std::size_t>(m)];
      }
      values_.push_back(std::move(value));
    }
  }
  values_ready_ = true;
}

void FamilyEvaluator::ensure_suffix_tables() {
  if (suffix_ready_) return;
  const std::size_t n = masses_.size();
  suffix_sums_.assign(n + 1, {});
  suffix_sums_[n] = {Rat(0)};
  std::vector<Rat> sorted;  // ascending masses of the current suffix
  for (std::size_t p = n; p-- > 0;) {
    sorted.insert(std::lower_bound(sorted.begin(), sorted.end(), masses_[p]),
                  masses_[p]);
    auto& row = suffix_sums_[p];
    row.resize(sorted.size() + 1);
    row[0] = 0;
    for (std::size_t t = 0; t < sorted.size(); ++t) row[t + 1] = row[t] + sorted[t];
  }
  suffix_ready_ = true;
}

std::optional<Rat> FamilyEvaluator::min_suffix_sum(std::size_t from,
                                                   std::size_t count) const {
  if (from > masses_.size()) return std::nullopt;
  const auto& row = suffix_sums_[from];
  if (count >= row.size()) return std::nullopt;
  return row[count];
}

const Rat& FamilyEvaluator::minimum() {
  if (minimum_) return *minimum_;
  if (family_.materialized()) {
    ensure_values();
    minimum_ = *std::min_element(values_.begin(), values_.end());
  } else {
    // Every union of cells is a member, so the minimum is attained by taking
    // exactly the cells with negative mass.
    Rat beta = 0;
    for (const auto& m : masses_) {
      if (m < 0) beta += m;
    }
    minimum_ = std::move(beta);
  }
  return *minimum_;
}

FamilyPick FamilyEvaluator::minimizer() {
  const Rat& beta = minimum();
  if (family_.materialized()) {
    ensure_values();
    const auto it = std::find(values_.begin(), values_.end(), beta);
    const auto idx = static_cast<std::size_t>(it - values_.begin());
    return {BigInt(idx) + 1, family_.items()[idx]};
  }
  // The strictly-negative cell set has the fewest cells among minimizers, and
  // any other minimizer adds zero-mass cells only, which sorts later in the
  // (cell count, endpoint tuple) order.
  std::vector<char> mask(masses_.size(), 0);
  for (std::size_t i = 0; i < masses_.size(); ++i) mask[i] = masses_[i] < 0;
  SetValue set = set_from_cells(mask);
  return {family_.index_of(set), std::move(set)};
}

SetValue FamilyEvaluator::first_below(const Rat& bound) {
  if (!(minimum() < bound)) {
    throw input_error("no family member lies below the requested bound");
  }
  if (family_.materialized()) {
    ensure_values();
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] < bound) return family_.items()[i];
    }
    throw construction_error("family scan missed its own minimum");
  }

  ensure_suffix_tables();
  const std::size_t n = masses_.size();

  // Smallest cell count first: find the least t whose best t-cell sum is
  // below the bound.
  std::size_t t = 0;
  while (true) {
    auto best = min_suffix_sum(0, t);
    if (!best) throw construction_error("family search missed its own minimum");
    if (*best < bound) break;
    ++t;
  }
  if (t == 0) return set_from_cells(std::vector<char>(n, 0));

  // Among t-cell sets, build the lexicographically least endpoint tuple.
  // Each greedy step keeps the invariant that some completion stays below the
  // bound, tested exactly with the suffix tables.
  std::vector<char> mask(n, 0);
  Rat acc = 0;
  std::size_t used = 0;
  std::size_t next_start = 0;
  while (used < t) {
    // Pick the run start: the least p where including p still allows a
    // completion below the bound.
    std::size_t rem = t - used;
    std::size_t p = next_start;
    while (true) {
      auto rest = min_suffix_sum(p + 1, rem - 1);
      if (rest && acc + masses_[p] + *rest < bound) break;
      ++p;
      if (p >= n) throw construction_error("family search lost feasibility");
    }
    mask[p] = 1;
    acc += masses_[p];
    ++used;

    // Extend the run while closing it would forfeit every completion.
    std::size_t q = p + 1;
    while (used < t) {
      rem = t - used;
      auto rest = min_suffix_sum(q + 1, rem);
      if (rest && acc + *rest < bound) {
        next_start = q + 1;  // close the run; cell q stays out
        break;
      }
      if (q >= n) throw construction_error("family search lost feasibility");
      mask[q] = 1;
      acc += masses_[q];
      ++used;
      ++q;
    }
  }
  if (!(acc < bound)) {
    throw construction_error("family search produced an out-of-bound set");
  }
  return set_from_cells(mask);
}

FamilyPick FamilyEvaluator::first_below_indexed(const Rat& bound) {
  SetValue set = first_below(bound);
  return {family_.index_of(set), std::move(set)};
}

const std::vector<Rat>& FamilyEvaluator::member_values() {
  ensure_values();
  return values_;
}

}  // namespace measurekit
