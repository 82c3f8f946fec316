#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "measurekit/hahn.hpp"

namespace measurekit {

// Finite, strictly increasing list of parameter values in [0, 1].
struct ParamGrid {
  std::vector<Rat> points;

  static ParamGrid make(std::vector<Rat> points);
  std::size_t size() const { return points.size(); }
  // Position of an exact grid point; input_error if absent.
  std::size_t index_of(const Rat& mu) const;
};

// Total map from grid points to charges of one common kind and resolution.
// Density charges are refined to the finest level present at construction.
class ParametricCharge {
 public:
  static ParametricCharge make(ParamGrid grid, std::vector<Charge> charges);

  const ParamGrid& grid() const { return grid_; }
  std::size_t size() const { return charges_.size(); }
  const Charge& at(std::size_t i) const { return charges_[i]; }
  const Charge& at_param(const Rat& mu) const {
    return charges_[grid_.index_of(mu)];
  }
  ChargeKind kind() const { return charges_.front().kind(); }
  int level() const { return charges_.front().level(); }
  int atom_count() const { return charges_.front().atom_count(); }

 private:
  ParametricCharge() = default;
  ParamGrid grid_;
  std::vector<Charge> charges_;
};

// β(μ) = inf over family members of λ(μ, member), per grid point.
std::vector<Rat> beta_curve(const ParametricCharge& pc,
                            const GeneratingFamily& family);

struct SelectionTable {
  std::vector<Rat> beta;  // per grid point
  // chosen_index[i][k-1]: 1-based family index of the smallest member with
  // λ(μ_i, member) < β(μ_i) + ε_k; chosen_set[i][k-1] is that member.
  std::vector<std::vector<BigInt>> chosen_index;
  std::vector<std::vector<SetValue>> chosen_set;
  // Materialized families only: y_membership[i][k-1][n] says whether family
  // member n+1 satisfies λ(μ_i, member) − β(μ_i) < ε_k. Empty otherwise.
  std::vector<std::vector<std::vector<char>>> y_membership;
};

SelectionTable selection_table(const ParametricCharge& pc,
                               const GeneratingFamily& family,
                               const EpsSchedule& sched);

struct JointSet {
  std::vector<SetValue> sections;  // per grid point
  std::vector<char> stabilized;    // per grid point
  // Partition of grid indices into classes on which the selection signature
  // (hence the section) is constant, ordered by first occurrence.
  std::vector<std::vector<std::size_t>> partition;
  // The signature that generated each partition class (diagnostic).
  std::vector<std::string> signatures;
};

// Sections X_-(μ) per grid point (each equal to construct_hahn's x_minus for
// that charge) plus the finite-measurability partition: grid points grouped
// by their selection signature. For materialized families the signature is
// the full per-k membership row of the bound λ(μ,·) − β(μ) < ε_k over family
// members; for the exhaustive kind it is (β(μ), chosen set per k), a coarser
// surrogate on which the section map is still constant.
JointSet build_joint_X_minus(const ParametricCharge& pc,
                             const GeneratingFamily& family,
                             const EpsSchedule& sched);

}  // namespace measurekit
