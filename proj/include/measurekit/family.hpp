#pragma once

#include <optional>
#include <vector>

#include "measurekit/sets.hpp"

namespace measurekit {

enum class FamilyKind {
  kIntervalExplicit,    // materialized unions of level-L cells, <= B components
  kIntervalExhaustive,  // every union of level-L cells, not materialized
  kAtomSubsets,         // every subset of a finite atom space, materialized
};

// Countable generating family of measurable sets. Items are ordered by
// (number of cells, then lexicographic on the endpoint tuple), so the first
// item is always the empty set. The exhaustive kind represents the same
// ordering without materializing its 2^(2^L) members; searches against it are
// answered combinatorially and agree item-for-item with the explicit kind.
class GeneratingFamily {
 public:
  static GeneratingFamily enumerate(int level, int max_components);
  static GeneratingFamily exhaustive(int level);
  static GeneratingFamily atom_subsets(int atom_count);

  FamilyKind kind() const { return kind_; }
  bool interval_kind() const { return kind_ != FamilyKind::kAtomSubsets; }
  bool materialized() const { return kind_ != FamilyKind::kIntervalExhaustive; }

  int level() const { return level_; }
  int max_components() const { return max_components_; }
  int atom_count() const { return atom_count_; }

  // Number of cells (level-L dyadic cells, or atoms) sets are built from.
  int cell_count() const;

  BigInt size() const;
  const std::vector<SetValue>& items() const;

  // 1-based position of a member in the enumeration order; input_error if the
  // set is not a member.
  BigInt index_of(const SetValue& member) const;

 private:
  GeneratingFamily() = default;

  FamilyKind kind_ = FamilyKind::kIntervalExplicit;
  int level_ = 0;
  int max_components_ = 0;
  int atom_count_ = 0;
  std::vector<SetValue> items_;
};

struct FamilyPick {
  BigInt index;  // 1-based
  SetValue set;
};

// Binds a family to one vector of per-cell masses (per-atom weights for the
// atom kind) and answers the minimization queries the constructions are made
// of. Mass vectors must have family.cell_count() entries.
class FamilyEvaluator {
 public:
  FamilyEvaluator(const GeneratingFamily& family, std::vector<Rat> cell_masses);

  // β = min over family members of the member's total mass.
  const Rat& minimum();
  // Smallest-index member attaining β.
  FamilyPick minimizer();
  // Smallest-index member with mass strictly below `bound`. The minimizer is
  // in every family, so this exists whenever bound > β.
  SetValue first_below(const Rat& bound);
  FamilyPick first_below_indexed(const Rat& bound);

  // Member values in enumeration order (materialized kinds only).
  const std::vector<Rat>& member_values();

 private:
  SetValue set_from_cells(const std::vector<char>& mask) const;
  void ensure_values();
  void ensure_suffix_tables();
  // Sum of the `count` smallest masses among cells [from, n); nullopt if
  // fewer than `count` cells remain.
  std::optional<Rat> min_suffix_sum(std::size_t from, std::size_t count) const;

  const GeneratingFamily& family_;
  std::vector<Rat> masses_;

  std::optional<Rat> minimum_;
  std::vector<Rat> values_;  // materialized kinds
  bool values_ready_ = false;
  // suffix_sums_[p][t] = sum of the t smallest masses among cells p..n-1.
  std::vector<std::vector<Rat>> suffix_sums_;
  bool suffix_ready_ = false;
};

}  // namespace measurekit
