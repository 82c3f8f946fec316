#include "measurekit/parametric.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "measurekit/parallel.hpp"

namespace measurekit {

ParamGrid ParamGrid::make(std::vector<Rat> points) {
  if (points.empty()) throw input_error("parameter grid must be nonempty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 0 || points[i] > 1) {
      throw input_error("parameter " + fraction_str(points[i]) +
                        " lies outside [0, 1]");
    }
    if (i > 0 && !(points[i - 1] < points[i])) {
      throw input_error("parameter grid must be strictly increasing");
    }
  }
  return {std::move(points)};
}

std::size_t ParamGrid::index_of(const Rat& mu) const {
  const auto it = std::lower_bound(points.begin(), points.end(), mu);
  if (it == points.end() || !(*it == mu)) {
    throw input_error("parameter " + fraction_str(mu) + " is not a grid point");
  }
  return static_cast<std::size_t>(it - points.begin());
}

ParametricCharge ParametricCharge::make(ParamGrid grid,
                                        std::vector<Charge> charges) {
  if (grid.size() != charges.size()) {
    throw input_error("parameter grid has " + std::to_string(grid.size()) +
                      " points but " + std::to_string(charges.size()) +
                      " charges were given");
  }
  const ChargeKind kind = charges.front().kind();
  for (const auto& c : charges) {
    if (c.kind() != kind) {
      throw input_error("parametric charges must share one kind");
    }
  }
  if (kind == ChargeKind::kAtoms) {
    const int n = charges.front().atom_count();
    for (const auto& c : charges) {
      if (c.atom_count() != n) {
        throw input_error("parametric atom charges must share one atom count");
      }
    }
  } else {
    int level = 0;
    for (const auto& c : charges) level = std::max(level, c.level());
    for (auto& c : charges) c = refine_density(c, level);
  }
  ParametricCharge pc;
  pc.grid_ = std::move(grid);
  pc.charges_ = std::move(charges);
  return pc;
}

std::vector<Rat> beta_curve(const ParametricCharge& pc,
                            const GeneratingFamily& family) {
  std::vector<Rat> beta(pc.size());
  parallel_for(pc.size(), [&](std::size_t i) {
    FamilyEvaluator eval(family, family_masses(pc.at(i), family));
    beta[i] = eval.minimum();
  });
  return beta;
}

SelectionTable selection_table(const ParametricCharge& pc,
                               const GeneratingFamily& family,
                               const EpsSchedule& sched) {
  const std::size_t points = pc.size();
  const auto k_count = static_cast<std::size_t>(sched.terms);
  SelectionTable table;
  table.beta.resize(points);
  table.chosen_index.resize(points);
  table.chosen_set.resize(points);
  if (family.materialized()) table.y_membership.resize(points);

  parallel_for(points, [&](std::size_t i) {
    FamilyEvaluator eval(family, family_masses(pc.at(i), family));
    table.beta[i] = eval.minimum();
    table.chosen_index[i].reserve(k_count);
    table.chosen_set[i].reserve(k_count);
    for (int k = 1; k <= sched.terms; ++k) {
      FamilyPick pick = eval.first_below_indexed(table.beta[i] + sched.eps(k));
      table.chosen_index[i].push_back(std::move(pick.index));
      table.chosen_set[i].push_back(std::move(pick.set));
    }
    if (family.materialized()) {
      const std::vector<Rat>& values = eval.member_values();
      auto& rows = table.y_membership[i];
      rows.resize(k_count);
      for (int k = 1; k <= sched.terms; ++k) {
        const Rat bound = table.beta[i] + sched.eps(k);
        auto& row = rows[static_cast<std::size_t>(k - 1)];
        row.resize(values.size());
        for (std::size_t n = 0; n < values.size(); ++n) {
          row[n] = values[n] < bound ? 1 : 0;
        }
      }
    }
  });
  return table;
}

namespace {

// Signature of one grid point's selections: the full membership rows when
// available, otherwise β plus the chosen set per term.
std::string selection_signature(const SelectionTable& table, std::size_t i,
                                bool materialized) {
  std::string sig;
  if (materialized) {
    for (const auto& row : table.y_membership[i]) {
      sig.append(row.begin(), row.end());
      sig.push_back('|');
    }
    return sig;
  }
  sig = fraction_str(table.beta[i]);
  for (const auto& set : table.chosen_set[i]) {
    sig.push_back('|');
    sig += set_str(set);
  }
  return sig;
}

}  // namespace

JointSet build_joint_X_minus(const ParametricCharge& pc,
                             const GeneratingFamily& family,
                             const EpsSchedule& sched) {
  SelectionTable table = selection_table(pc, family, sched);
  const std::size_t points = pc.size();

  JointSet joint;
  joint.sections.resize(points, SetValue{});
  joint.stabilized.resize(points, 0);
  parallel_for(points, [&](std::size_t i) {
    XMinusResult built = build_X_minus(table.chosen_set[i], sched.terms);
    joint.sections[i] = std::move(built.x_minus);
    joint.stabilized[i] = built.stabilized ? 1 : 0;
  });

  // Group grid points by selection signature, classes ordered by first
  // occurrence. The section is a function of the signature, so it is
  // constant on every class.
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < points; ++i) {
    std::string sig = selection_signature(table, i, family.materialized());
    auto [it, inserted] = seen.emplace(std::move(sig), joint.partition.size());
    if (inserted) {
      joint.partition.emplace_back();
      joint.signatures.push_back(it->first);
    }
    joint.partition[it->second].push_back(i);
  }
  return joint;
}

}  // namespace measurekit
