#pragma once

#include <vector>

#include "measurekit/family.hpp"
#include "measurekit/sets.hpp"

namespace measurekit {

enum class ChargeKind { kAtoms, kDensity };

// Finite signed measure, represented either by atom weights or by a
// piecewise-constant density on the level-L dyadic grid of [0,1). All values
// are exact rationals.
class Charge {
 public:
  static Charge atoms(std::vector<Rat> weights);
  static Charge density(int level, std::vector<Rat> values);

  ChargeKind kind() const { return kind_; }
  int atom_count() const;
  int level() const;

  const std::vector<Rat>& weights() const;  // atoms kind
  const std::vector<Rat>& values() const;   // density kind: density per cell

  // Signed mass of each level-`level` cell. Finer grids split a cell's mass
  // evenly; coarser grids sum children. Both directions are exact. Density
  // kind only.
  std::vector<Rat> cell_masses(int level) const;

  Rat total_mass() const;

 private:
  Charge() = default;

  ChargeKind kind_ = ChargeKind::kAtoms;
  int level_ = 0;
  std::vector<Rat> data_;
};

// λ(A). The set kind must match the charge kind; interval sets may use
// endpoints finer than the density grid (evaluated exactly).
Rat charge_eval(const Charge& charge, const SetValue& set);
Rat charge_eval(const Charge& charge, const IntervalUnionSet& set);
Rat charge_eval(const Charge& charge, const AtomSet& set);

// p_mu - r * p_base, with densities refined to a common grid first.
Charge combine(const Charge& p_mu, const Rat& r, const Charge& p_base);

// Restate a density charge on a finer grid (exact). No-op at its own level.
Charge refine_density(const Charge& charge, int level);

// Sum of |mass| over atoms / cells: the total variation ||λ||.
Rat total_variation(const Charge& charge);

struct InfimumResult {
  Rat beta;             // inf over family members of λ(member)
  BigInt argmin_index;  // 1-based index of the smallest attaining member
  SetValue argmin_set;
};

// β = inf_n λ(I_n) over a generating family, with the attaining member.
// The family kind must match the charge kind.
InfimumResult infimum_over_family(const Charge& charge,
                                  const GeneratingFamily& family);

// Per-cell masses of `charge` at the family's resolution, ready for a
// FamilyEvaluator. Validates kind and atom-count compatibility.
std::vector<Rat> family_masses(const Charge& charge,
                               const GeneratingFamily& family);

}  // namespace measurekit
