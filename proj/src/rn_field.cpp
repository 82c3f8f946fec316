#include "measurekit/rn_field.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "measurekit/parallel.hpp"

namespace measurekit {

RationalGrid RationalGrid::make(const Rat& step, const Rat& r_max) {
  if (!(step > 0)) throw input_error("threshold step must be positive");
  if (!(r_max > 0)) throw input_error("r_max must be positive");
  BigInt steps = floor_quotient(r_max, step);
  if (Rat(steps) * step < r_max) ++steps;  // round r_max up onto the grid
  RationalGrid rg;
  rg.step = step;
  rg.values.reserve(static_cast<std::size_t>(steps) + 1);
  for (BigInt j = 0; j <= steps; ++j) rg.values.push_back(Rat(j) * step);
  return rg;
}

namespace {

std::string cell_name(int level, std::size_t index) {
  return set_str(IntervalUnionSet::cell(level, static_cast<std::int64_t>(index)));
}

void require_nonnegative(const Charge& c, const std::string& what) {
  for (const auto& v : c.values()) {
    if (v < 0) {
      throw input_error(what + " must be nonnegative, found density " +
                        fraction_str(v));
    }
  }
}

void require_probability(const Charge& c, const std::string& what) {
  require_nonnegative(c, what);
  if (!(c.total_mass() == 1)) {
    throw input_error(what + " must have total mass 1, found " +
                      fraction_str(c.total_mass()));
  }
}

// Shared core: builds the level-set family for charges fam(i) − r·base(i).
LevelSetFamily build_family_core(const std::function<const Charge&(std::size_t)>& base_at,
                                 const ParametricCharge& fam,
                                 const RationalGrid& rgrid,
                                 const GeneratingFamily& family,
                                 const EpsSchedule& sched) {
  if (fam.kind() != ChargeKind::kDensity) {
    throw input_error("derivative fields are built over density charges");
  }
  if (!family.interval_kind()) {
    throw input_error("derivative fields need an interval family");
  }
  const std::size_t points = fam.size();
  int charge_level = fam.level();
  for (std::size_t i = 0; i < points; ++i) {
    charge_level = std::max(charge_level, base_at(i).level());
  }
  if (family.level() < charge_level) {
    throw input_error("family level " + std::to_string(family.level()) +
                      " is coarser than the charge grid (level " +
                      std::to_string(charge_level) + ")");
  }
  const int level = family.level();
  const std::size_t cells = std::size_t{1} << level;

  // Absolute continuity cellwise, with the offending cell and parameter named.
  std::vector<std::vector<Rat>> base_masses(points);
  std::vector<std::vector<Rat>> fam_masses(points);
  for (std::size_t i = 0; i < points; ++i) {
    base_masses[i] = base_at(i).cell_masses(level);
    fam_masses[i] = fam.at(i).cell_masses(level);
    for (std::size_t c = 0; c < cells; ++c) {
      if (base_masses[i][c] == 0 && !(fam_masses[i][c] == 0)) {
        throw input_error(
            "absolute continuity fails at parameter " +
            fraction_str(fam.grid().points[i]) + ": cell " +
            cell_name(level, c) + " has base mass 0 but family mass " +
            fraction_str(fam_masses[i][c]));
      }
    }
  }

  // Truncated coverage: the top threshold must dominate every cell ratio.
  Rat needed = 0;
  for (std::size_t i = 0; i < points; ++i) {
    for (std::size_t c = 0; c < cells; ++c) {
      if (base_masses[i][c] > 0) {
        {
          Rat ratio = Rat(fam_masses[i][c]) / base_masses[i][c];
          if (ratio > needed) needed = ratio;
        }
      }
    }
  }
  if (rgrid.r_max() < needed) {
    throw input_error("r_max " + fraction_str(rgrid.r_max()) +
                      " is below the largest cell ratio " +
                      fraction_str(needed) +
                      "; the level sets cannot cover the space");
  }

  LevelSetFamily lf;
  lf.grid = fam.grid();
  lf.rgrid = rgrid;
  lf.cell_level = level;
  const std::size_t r_count = rgrid.size();
  lf.raw_sections.assign(points, std::vector<IntervalUnionSet>(r_count));
  lf.x_sections.assign(points, std::vector<IntervalUnionSet>(r_count));
  lf.s0.resize(points);
  lf.s_r.assign(points, std::vector<IntervalUnionSet>(r_count));
  lf.stabilized.assign(points, 1);
  std::vector<std::vector<char>> stab(points, std::vector<char>(r_count, 0));

  // One independent Hahn construction per (parameter, threshold) pair.
  parallel_for(points * r_count, [&](std::size_t flat) {
    const std::size_t i = flat / r_count;
    const std::size_t j = flat % r_count;
    const Rat& r = rgrid.values[j];

    const Charge combined = combine(fam.at(i), r, base_at(i));
    const std::vector<Rat> masses = combined.cell_masses(level);
    FamilyEvaluator eval(family, masses);
    const Rat beta = eval.minimum();
    std::vector<SetValue> e_sets;
    e_sets.reserve(static_cast<std::size_t>(sched.terms));
    for (int k = 1; k <= sched.terms; ++k) {
      e_sets.push_back(eval.first_below(beta + sched.eps(k)));
    }
    XMinusResult built = build_X_minus(e_sets, sched.terms);
    const IntervalUnionSet raw = as_intervals(built.x_minus);

    HahnCertificate cert = hahn_certificate(combined, built.x_minus);
    if (!cert.valid()) {
      throw construction_error(
          "negative-set defect at parameter " +
          fraction_str(fam.grid().points[i]) + ", threshold " +
          fraction_str(r) + ": positive part " + fraction_str(cert.pos_defect) +
          ", negative part " + fraction_str(cert.neg_defect) +
          " (family too coarse or schedule too short)");
    }

    // Normalize on charge-null cells: keep exactly the cells with positive
    // base mass and nonpositive combined mass. The difference from the raw
    // set must itself be combined-null.
    std::vector<char> mask(cells, 0);
    for (std::size_t c = 0; c < cells; ++c) {
      mask[c] = base_masses[i][c] > 0 && !(masses[c] > 0) ? 1 : 0;
    }
    IntervalUnionSet used = IntervalUnionSet::from_cells(level, mask);
    const std::vector<char> raw_mask = raw.cell_mask(level);
    for (std::size_t c = 0; c < cells; ++c) {
      if (raw_mask[c] != mask[c] && !(masses[c] == 0)) {
        throw construction_error("normalization moved cell " +
                                 cell_name(level, c) +
                                 " carrying nonzero charge " +
                                 fraction_str(masses[c]));
      }
    }

    lf.raw_sections[i][j] = raw;
    lf.x_sections[i][j] = std::move(used);
    stab[i][j] = built.stabilized ? 1 : 0;
  });

  for (std::size_t i = 0; i < points; ++i) {
    // S_0 = everything outside every X section; with normalized sections this
    // is exactly the base-null cells.
    IntervalUnionSet all_x;
    for (std::size_t j = 0; j < r_count; ++j) {
      all_x = set_union(all_x, lf.x_sections[i][j]);
    }
    lf.s0[i] = set_complement(all_x);

    IntervalUnionSet running = lf.s0[i];
    bool all_stab = true;
    for (std::size_t j = 0; j < r_count; ++j) {
      running = set_union(running, lf.x_sections[i][j]);
      lf.s_r[i][j] = running;
      all_stab = all_stab && stab[i][j];
    }
    lf.stabilized[i] = all_stab ? 1 : 0;

    // A1: each section contains its predecessors; A2: the top section is
    // everything. Both are structural after normalization.
    for (std::size_t j = 1; j < r_count; ++j) {
      if (!subset_of(lf.s_r[i][j - 1], lf.s_r[i][j])) {
        throw construction_error("level sets are not nested at parameter " +
                                 fraction_str(lf.grid.points[i]));
      }
    }
    if (!(lf.s_r[i][r_count - 1] == IntervalUnionSet::full())) {
      throw construction_error("top level set does not cover the space at parameter " +
                               fraction_str(lf.grid.points[i]));
    }
  }
  return lf;
}

}  // namespace

LevelSetFamily build_level_family(const Charge& p_base,
                                  const ParametricCharge& p_fam,
                                  const RationalGrid& rgrid,
                                  const GeneratingFamily& family,
                                  const EpsSchedule& sched) {
  if (p_base.kind() != ChargeKind::kDensity) {
    throw input_error("derivative fields are built over density charges");
  }
  require_probability(p_base, "the base charge");
  for (std::size_t i = 0; i < p_fam.size(); ++i) {
    require_probability(p_fam.at(i), "every family charge");
  }
  return build_family_core([&](std::size_t) -> const Charge& { return p_base; },
                           p_fam, rgrid, family, sched);
}

DerivativeField make_derivative_field(LevelSetFamily family) {
  return DerivativeField{std::move(family)};
}

Rat evaluate_derivative(const DerivativeField& df, const Rat& mu,
                        const Rat& nu) {
  const LevelSetFamily& lf = df.family;
  const std::size_t i = lf.grid.index_of(mu);
  if (nu < 0 || !(nu < 1)) {
    throw input_error("evaluation point " + fraction_str(nu) +
                      " lies outside [0, 1)");
  }
  const auto& sections = lf.s_r[i];
  // Sections grow with r, so the least containing threshold is found by
  // binary search on membership.
  std::size_t lo = 0;
  std::size_t hi = sections.size() - 1;
  if (!sections[hi].contains(nu)) {
    throw construction_error("level sets fail to cover " + fraction_str(nu));
  }
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (sections[mid].contains(nu)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lf.rgrid.values[lo];
}

Rat staircase_value(const Rat& f, const Rat& delta) {
  if (!(delta > 0)) throw input_error("staircase step must be positive");
  return Rat(floor_quotient(f, delta)) * delta;
}

StaircaseField staircase(const DerivativeField& df, const Rat& delta) {
  if (!(delta > 0)) throw input_error("staircase step must be positive");
  return {&df, delta};
}

Rat evaluate_staircase(const StaircaseField& sf, const Rat& mu, const Rat& nu) {
  return staircase_value(evaluate_derivative(*sf.base, mu, nu), sf.delta);
}

Rat verify_rn_identity(const DerivativeField& df, const Charge& p_base,
                       const ParametricCharge& p_fam, const Rat& mu,
                       const IntervalUnionSet& test_set) {
  const LevelSetFamily& lf = df.family;
  const int level = lf.cell_level;
  const std::size_t i = lf.grid.index_of(mu);
  // f is constant on level cells, so the integral is a finite sum of
  // f(cell) * base-mass(A ∩ cell).
  Rat integral = 0;
  const Rat width = Rat(1) / (BigInt(1) << level);
  for (std::size_t c = 0; c < (std::size_t{1} << level); ++c) {
    const IntervalUnionSet piece = set_intersect(
        test_set, IntervalUnionSet::cell(level, static_cast<std::int64_t>(c)));
    if (piece.empty()) continue;
    const Rat f_cell = evaluate_derivative(df, mu, Rat(c) * width);
    integral += f_cell * charge_eval(p_base, piece);
  }
  const Rat target = charge_eval(p_fam.at(i), test_set);
  Rat residual = integral - target;
  if (residual < 0) residual = -residual;
  return residual;
}

namespace {

NullDefects null_defects_core(const LevelSetFamily& lf,
                              const std::function<const Charge&(std::size_t)>& base_at) {
  NullDefects report;
  const std::size_t points = lf.grid.size();
  const std::size_t r_count = lf.rgrid.size();
  report.s0_mass.resize(points);
  report.max_pair_defect = 0;
  report.max_raw_pair_defect = 0;
  std::vector<Rat> pair_max(points, Rat(0));
  std::vector<Rat> raw_pair_max(points, Rat(0));
  parallel_for(points, [&](std::size_t i) {
    report.s0_mass[i] = charge_eval(base_at(i), lf.s0[i]);
    for (std::size_t j2 = 1; j2 < r_count; ++j2) {
      for (std::size_t j1 = 0; j1 < j2; ++j1) {
        const IntervalUnionSet lost =
            set_diff(lf.x_sections[i][j1], lf.x_sections[i][j2]);
        if (!lost.empty()) {
          pair_max[i] = std::max(pair_max[i], charge_eval(base_at(i), lost));
        }
        const IntervalUnionSet raw_lost =
            set_diff(lf.raw_sections[i][j1], lf.raw_sections[i][j2]);
        if (!raw_lost.empty()) {
          raw_pair_max[i] =
              std::max(raw_pair_max[i], charge_eval(base_at(i), raw_lost));
        }
      }
    }
  });
  for (std::size_t i = 0; i < points; ++i) {
    report.max_pair_defect = std::max(report.max_pair_defect, pair_max[i]);
    report.max_raw_pair_defect =
        std::max(report.max_raw_pair_defect, raw_pair_max[i]);
  }
  report.all_zero = report.max_pair_defect == 0 &&
                    report.max_raw_pair_defect == 0 &&
                    std::all_of(report.s0_mass.begin(), report.s0_mass.end(),
                                [](const Rat& m) { return m == 0; });
  return report;
}

}  // namespace

NullDefects null_defects(const LevelSetFamily& lf, const Charge& p_base) {
  return null_defects_core(
      lf, [&](std::size_t) -> const Charge& { return p_base; });
}

NullDefects null_defects(const LevelSetFamily& lf,
                         const ParametricCharge& base_fam) {
  if (base_fam.size() != lf.grid.size()) {
    throw input_error("base family does not match the level-set grid");
  }
  return null_defects_core(
      lf, [&](std::size_t i) -> const Charge& { return base_fam.at(i); });
}

DerivativeField two_family_rn(const ParametricCharge& lam_fam,
                              const ParametricCharge& mu_fam,
                              const RationalGrid& rgrid,
                              const GeneratingFamily& family,
                              const EpsSchedule& sched) {
  if (!(lam_fam.grid().points == mu_fam.grid().points)) {
    throw input_error("the two families must share one parameter grid");
  }
  if (lam_fam.kind() != ChargeKind::kDensity ||
      mu_fam.kind() != ChargeKind::kDensity) {
    throw input_error("derivative fields are built over density charges");
  }
  for (std::size_t i = 0; i < lam_fam.size(); ++i) {
    require_nonnegative(lam_fam.at(i), "every base-family charge");
    require_nonnegative(mu_fam.at(i), "every numerator-family charge");
  }
  LevelSetFamily lf = build_family_core(
      [&](std::size_t i) -> const Charge& { return lam_fam.at(i); }, mu_fam,
      rgrid, family, sched);
  return DerivativeField{std::move(lf)};
}

Rat max_cell_ratio(const Charge& p_base, const ParametricCharge& p_fam) {
  const int level = std::max(p_base.level(), p_fam.level());
  const std::vector<Rat> base = p_base.cell_masses(level);
  Rat worst = 0;
  for (std::size_t i = 0; i < p_fam.size(); ++i) {
    const std::vector<Rat> fam = p_fam.at(i).cell_masses(level);
    for (std::size_t c = 0; c < base.size(); ++c) {
      if (base[c] > 0) {
        Rat ratio = Rat(fam[c]) / base[c];
        if (ratio > worst) worst = ratio;
      }
    }
  }
  return worst;
}

Rat max_cell_ratio(const ParametricCharge& lam_fam,
                   const ParametricCharge& mu_fam) {
  if (!(lam_fam.grid().points == mu_fam.grid().points)) {
    throw input_error("the two families must share one parameter grid");
  }
  const int level = std::max(lam_fam.level(), mu_fam.level());
  Rat worst = 0;
  for (std::size_t i = 0; i < lam_fam.size(); ++i) {
    const std::vector<Rat> base = lam_fam.at(i).cell_masses(level);
    const std::vector<Rat> fam = mu_fam.at(i).cell_masses(level);
    for (std::size_t c = 0; c < base.size(); ++c) {
      if (base[c] > 0) {
        Rat ratio = Rat(fam[c]) / base[c];
        if (ratio > worst) worst = ratio;
      }
    }
  }
  return worst;
}

}  // namespace measurekit
