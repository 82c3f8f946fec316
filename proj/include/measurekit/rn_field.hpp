#pragma once

#include <vector>

#include "measurekit/parametric.hpp"

namespace measurekit {

// Threshold grid 0, Δr, 2Δr, ..., r_max for the level-set construction.
struct RationalGrid {
  Rat step;                 // Δr
  std::vector<Rat> values;  // strictly increasing, values[0] == 0

  // r_max is rounded up to the next grid multiple when needed.
  static RationalGrid make(const Rat& step, const Rat& r_max);

  std::size_t size() const { return values.size(); }
  const Rat& r_max() const { return values.back(); }
};

// Level sets of the derivative, per parameter and per threshold. All sets are
// unions of level-`cell_level` dyadic cells.
//
// raw_sections[i][j] is the negative set X^r_- produced by the truncated
// construction for the combined charge at (μ_i, r_j), kept verbatim.
// x_sections[i][j] is the same set normalized on charge-null cells: exactly
// the cells with positive base mass and nonpositive combined mass. The two
// differ only on cells where the combined charge vanishes (asserted), and the
// normalized form makes the chain monotone in r without exceptions.
// s_r[i][j] = (⋃_{j'<=j} x_sections[i][j']) ∪ s0[i].
struct LevelSetFamily {
  ParamGrid grid;
  RationalGrid rgrid;
  int cell_level = 0;
  std::vector<std::vector<IntervalUnionSet>> raw_sections;
  std::vector<std::vector<IntervalUnionSet>> x_sections;
  std::vector<IntervalUnionSet> s0;
  std::vector<std::vector<IntervalUnionSet>> s_r;
  std::vector<char> stabilized;  // per grid point: every r-section stabilized
};

// f(μ,ν) = least grid threshold r with ν ∈ S_r(μ).
struct DerivativeField {
  LevelSetFamily family;
};

// Builds the level-set family for the charges p_fam(μ) − r·p_base.
// Preconditions: density charges; p_base and every p_fam(μ) nonnegative with
// total mass 1; p_fam(μ) absolutely continuous w.r.t. p_base cellwise;
// family resolution >= charge resolution; r_max >= every cell ratio.
LevelSetFamily build_level_family(const Charge& p_base,
                                  const ParametricCharge& p_fam,
                                  const RationalGrid& rgrid,
                                  const GeneratingFamily& family,
                                  const EpsSchedule& sched);

DerivativeField make_derivative_field(LevelSetFamily family);

Rat evaluate_derivative(const DerivativeField& df, const Rat& mu, const Rat& nu);

// δ·floor(f/δ): the largest staircase level mδ with mδ <= f.
Rat staircase_value(const Rat& f, const Rat& delta);

// View of a field rounded down to multiples of δ; keeps a reference to `df`.
struct StaircaseField {
  const DerivativeField* base;
  Rat delta;
};
StaircaseField staircase(const DerivativeField& df, const Rat& delta);
Rat evaluate_staircase(const StaircaseField& sf, const Rat& mu, const Rat& nu);

// |∫_A f(μ,·) dp_base − p_fam(μ)(A)|, exact. Bounded by Δr·p_base(A).
Rat verify_rn_identity(const DerivativeField& df, const Charge& p_base,
                       const ParametricCharge& p_fam, const Rat& mu,
                       const IntervalUnionSet& test_set);

struct NullDefects {
  std::vector<Rat> s0_mass;   // base mass of S_0(μ) per grid point
  Rat max_pair_defect;        // max base mass of X^{r'}∖X^r over μ, r' < r
  Rat max_raw_pair_defect;    // same over the raw sections
  bool all_zero = false;
};

// Base-nullity checks: S_0 carries no base mass and the X-chain loses no base
// mass between thresholds. The overload with a parametric base applies each
// grid point's own base charge (two-family fields).
NullDefects null_defects(const LevelSetFamily& lf, const Charge& p_base);
NullDefects null_defects(const LevelSetFamily& lf,
                         const ParametricCharge& base_fam);

// Same construction with a per-parameter base: charges mu_fam(x) − r·lam_fam(x).
// Neither family needs total mass 1; both must be nonnegative and share a
// parameter grid, with mu_fam(x) absolutely continuous w.r.t. lam_fam(x).
DerivativeField two_family_rn(const ParametricCharge& lam_fam,
                              const ParametricCharge& mu_fam,
                              const RationalGrid& rgrid,
                              const GeneratingFamily& family,
                              const EpsSchedule& sched);

// Smallest valid threshold ceiling: max over parameters and cells of the
// ratio fam/base, for automatic r_max selection.
Rat max_cell_ratio(const Charge& p_base, const ParametricCharge& p_fam);
Rat max_cell_ratio(const ParametricCharge& lam_fam,
                   const ParametricCharge& mu_fam);

}  // namespace measurekit
