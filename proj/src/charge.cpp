#include "measurekit/charge.hpp"

#include <string>
#include <utility>

namespace measurekit {

Charge Charge::atoms(std::vector<Rat> weights) {
  if (weights.empty()) throw input_error("atom charge needs at least one atom");
  Charge c;
  c.kind_ = ChargeKind::kAtoms;
  c.data_ = std::move(weights);
  return c;
}

Charge Charge::density(int level, std::vector<Rat> values) {
  if (level < 0 || level > Dyadic::kMaxLevel) {
    throw input_error("density level out of range: " + std::to_string(level));
  }
  const std::size_t cells = std::size_t{1} << level;
  if (values.size() != cells) {
    throw input_error("density at level " + std::to_string(level) + " needs " +
                      std::to_string(cells) + " values, got " +
                      std::to_string(values.size()));
  }
  Charge c;
  c.kind_ = ChargeKind::kDensity;
  c.level_ = level;
  c.data_ = std::move(values);
  return c;
}

int Charge::atom_count() const {
  if (kind_ != ChargeKind::kAtoms) {
    throw input_error("charge has no atoms (density kind)");
  }
  return static_cast<int>(data_.size());
}

int Charge::level() const {
  if (kind_ != ChargeKind::kDensity) {
    throw input_error("charge has no grid level (atom kind)");
  }
  return level_;
}

const std::vector<Rat>& Charge::weights() const {
  if (kind_ != ChargeKind::kAtoms) {
    throw input_error("charge has no atom weights (density kind)");
  }
  return data_;
}

const std::vector<Rat>& Charge::values() const {
  if (kind_ != ChargeKind::kDensity) {
    throw input_error("charge has no density values (atom kind)");
  }
  return data_;
}

std::vector<Rat> Charge::cell_masses(int level) const {
  const std::vector<Rat>& vals = values();
  if (level < 0 || level > Dyadic::kMaxLevel) {
    throw input_error("cell level out of range: " + std::to_string(level));
  }
  std::vector<Rat> masses(std::size_t{1} << level);
  if (level >= level_) {
    // Each own cell splits into 2^(level - level_) equal parts.
    const Rat fine_width = Rat(1) / (BigInt(1) << level);
    const int shift = level - level_;
    for (std::size_t c = 0; c < masses.size(); ++c) {
      masses[c] = vals[c >> shift] * fine_width;
    }
  } else {
    const Rat own_width = Rat(1) / (BigInt(1) << level_);
    const int shift = level_ - level;
    for (std::size_t c = 0; c < vals.size(); ++c) {
      masses[c >> shift] += vals[c] * own_width;
    }
  }
  return masses;
}

Rat Charge::total_mass() const {
  Rat total = 0;
  if (kind_ == ChargeKind::kAtoms) {
    for (const auto& w : data_) total += w;
  } else {
    const Rat width = Rat(1) / (BigInt(1) << level_);
    for (const auto& v : data_) total += v * width;
  }
  return total;
}

Rat charge_eval(const Charge& charge, const IntervalUnionSet& set) {
  if (charge.kind() != ChargeKind::kDensity) {
    throw input_error("interval set evaluated against an atom charge");
  }
  const int level = charge.level();
  const auto& vals = charge.values();
  const Rat width = Rat(1) / (BigInt(1) << level);
  Rat total = 0;
  for (const auto& iv : set.intervals()) {
    // Walk the density cells the interval touches; endpoints may be finer
    // than the grid, so each cell contributes density * overlap length.
    const Rat a = iv.first.to_rat();
    const Rat b = iv.second.to_rat();
    const auto first_cell = static_cast<std::size_t>(floor_quotient(a, width));
    for (std::size_t c = first_cell; c < vals.size(); ++c) {
      const Rat cell_lo = Rat(c) * width;
      if (!(cell_lo < b)) break;
      const Rat cell_hi = Rat(c + 1) * width;
      const Rat lo = a > cell_lo ? a : cell_lo;
      const Rat hi = b < cell_hi ? b : cell_hi;
      if (lo < hi) total += vals[c] * (hi - lo);
    }
  }
  return total;
}

Rat charge_eval(const Charge& charge, const AtomSet& set) {
  if (charge.kind() != ChargeKind::kAtoms) {
    throw input_error("atom set evaluated against a density charge");
  }
  const auto& w = charge.weights();
  if (static_cast<int>(w.size()) != set.atom_count()) {
    throw input_error("atom set has " + std::to_string(set.atom_count()) +
                      " atoms but the charge has " + std::to_string(w.size()));
  }
  Rat total = 0;
  for (int m : set.members()) total += w[static_cast<std::size_t>(m)];
  return total;
}

Rat charge_eval(const Charge& charge, const SetValue& set) {
  if (is_interval_set(set)) {
    return charge_eval(charge, as_intervals(set));
  }
  return charge_eval(charge, as_atoms(set));
}

Charge refine_density(const Charge& charge, int level) {
  const int own = charge.level();
  if (level < own) {
    throw input_error("cannot refine a level-" + std::to_string(own) +
                      " density to coarser level " + std::to_string(level));
  }
  if (level == own) return charge;
  const auto& vals = charge.values();
  std::vector<Rat> fine(std::size_t{1} << level);
  const int shift = level - own;
  for (std::size_t c = 0; c < fine.size(); ++c) fine[c] = vals[c >> shift];
  return Charge::density(level, std::move(fine));
}

Charge combine(const Charge& p_mu, const Rat& r, const Charge& p_base) {
  if (p_mu.kind() != p_base.kind()) {
    throw input_error("cannot combine charges of different kinds");
  }
  if (p_mu.kind() == ChargeKind::kAtoms) {
    const auto& a = p_mu.weights();
    const auto& b = p_base.weights();
    if (a.size() != b.size()) {
      throw input_error("cannot combine atom charges of different sizes");
    }
    std::vector<Rat> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - r * b[i];
    return Charge::atoms(std::move(out));
  }
  const int level = std::max(p_mu.level(), p_base.level());
  const Charge mu = refine_density(p_mu, level);
  const Charge base = refine_density(p_base, level);
  std::vector<Rat> out(mu.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = mu.values()[i] - r * base.values()[i];
  }
  return Charge::density(level, std::move(out));
}

Rat total_variation(const Charge& charge) {
  Rat total = 0;
  if (charge.kind() == ChargeKind::kAtoms) {
    for (const auto& w : charge.weights()) total += w < 0 ? -w : w;
  } else {
    const Rat width = Rat(1) / (BigInt(1) << charge.level());
    for (const auto& v : charge.values()) total += (v < 0 ? -v : v) * width;
  }
  return total;
}

std::vector<Rat> family_masses(const Charge& charge,
                               const GeneratingFamily& family) {
  if (family.interval_kind()) {
    if (charge.kind() != ChargeKind::kDensity) {
      throw input_error("interval family paired with an atom charge");
    }
    return charge.cell_masses(family.level());
  }
  if (charge.kind() != ChargeKind::kAtoms) {
    throw input_error("atom family paired with a density charge");
  }
  if (charge.atom_count() != family.atom_count()) {
    throw input_error("charge has " + std::to_string(charge.atom_count()) +
                      " atoms but the family has " +
                      std::to_string(family.atom_count()));
  }
  return charge.weights();
}

InfimumResult infimum_over_family(const Charge& charge,
                                  const GeneratingFamily& family) {
  FamilyEvaluator eval(family, family_masses(charge, family));
  Rat beta = eval.minimum();
  FamilyPick pick = eval.minimizer();
  return {std::move(beta), std::move(pick.index), std::move(pick.set)};
}

}  // namespace measurekit
