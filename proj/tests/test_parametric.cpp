#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "measurekit/parametric.hpp"
#include "test_util.hpp"

using measurekit::Charge;
using measurekit::EpsSchedule;
using measurekit::GeneratingFamily;
using measurekit::ParamGrid;
using measurekit::ParametricCharge;
using measurekit::Rat;
using testutil::ivs;
using testutil::R;

namespace {

EpsSchedule halving(int terms) {
  return EpsSchedule::make(Rat(1), R("1/2"), terms);
}

ParametricCharge slope_family() {
  // λ(μ,·) has density 2μ-1 on [0,1/2) and 1 on [1/2,1).
  std::vector<Rat> params = {Rat(0), R("1/4"), R("3/8"), R("1/2"), Rat(1)};
  std::vector<Charge> charges;
  for (const Rat& mu : params) {
    charges.push_back(Charge::density(1, {Rat(2 * mu - 1), Rat(1)}));
  }
  return ParametricCharge::make(ParamGrid::make(params), std::move(charges));
}

}  // namespace

TEST_CASE("parameter grid validation and lookup") {
  CHECK_THROWS_AS(ParamGrid::make({}), measurekit::input_error);
  CHECK_THROWS_AS(ParamGrid::make({Rat(0), Rat(0)}), measurekit::input_error);
  CHECK_THROWS_AS(ParamGrid::make({R("1/2"), R("1/4")}),
                  measurekit::input_error);
  CHECK_THROWS_AS(ParamGrid::make({Rat(2)}), measurekit::input_error);

  const ParamGrid g = ParamGrid::make({Rat(0), R("1/2"), Rat(1)});
  CHECK(g.index_of(R("1/2")) == 1);
  CHECK_THROWS_AS(g.index_of(R("1/4")), measurekit::input_error);
}

TEST_CASE("parametric charges share one kind and resolution") {
  CHECK_THROWS_AS(
      ParametricCharge::make(
          ParamGrid::make({Rat(0), Rat(1)}),
          {Charge::atoms({Rat(1)}), Charge::density(0, {Rat(1)})}),
      measurekit::input_error);
  CHECK_THROWS_AS(
      ParametricCharge::make(ParamGrid::make({Rat(0), Rat(1)}),
                             {Charge::atoms({Rat(1)})}),
      measurekit::input_error);

  // Densities of different levels are refined to the finest one.
  const ParametricCharge pc = ParametricCharge::make(
      ParamGrid::make({Rat(0), Rat(1)}),
      {Charge::density(0, {Rat(1)}), Charge::density(1, {Rat(0), Rat(2)})});
  CHECK(pc.level() == 1);
  CHECK(pc.at(0).values() == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("infimum curve across the parameter grid") {
  SUBCASE("nonnegative charges give the zero curve") {
    const ParametricCharge pc = ParametricCharge::make(
        ParamGrid::make({Rat(0), Rat(1)}),
        {Charge::density(0, {Rat(2)}), Charge::density(0, {Rat(1)})});
    const auto beta = beta_curve(pc, GeneratingFamily::exhaustive(0));
    CHECK(beta == std::vector<Rat>{Rat(0), Rat(0)});
  }
  SUBCASE("sloped family has the analytic curve") {
    const auto beta = beta_curve(slope_family(), GeneratingFamily::exhaustive(1));
    // β(μ) = (2μ-1)/2 while the first cell is negative, then 0.
    CHECK(beta == std::vector<Rat>{R("-1/2"), R("-1/4"), R("-1/8"), Rat(0),
                                   Rat(0)});
  }
  SUBCASE("constant family gives a constant curve") {
    const ParametricCharge pc = ParametricCharge::make(
        ParamGrid::make({Rat(0), R("1/2"), Rat(1)}),
        {Charge::density(1, {Rat(-1), Rat(2)}),
         Charge::density(1, {Rat(-1), Rat(2)}),
         Charge::density(1, {Rat(-1), Rat(2)})});
    const auto beta = beta_curve(pc, GeneratingFamily::exhaustive(1));
    CHECK(beta ==
          std::vector<Rat>{R("-1/2"), R("-1/2"), R("-1/2")});
  }
}

TEST_CASE("selection tables record the chosen indices and bounds") {
  SUBCASE("nonnegative charges always select the empty set") {
    const ParametricCharge pc = ParametricCharge::make(
        ParamGrid::make({Rat(0), Rat(1)}),
        {Charge::density(1, {Rat(1), Rat(2)}),
         Charge::density(1, {Rat(2), Rat(1)})});
    const auto table =
        selection_table(pc, GeneratingFamily::enumerate(1, 1), halving(4));
    for (std::size_t i = 0; i < pc.size(); ++i) {
      CHECK(table.beta[i] == Rat(0));
      for (int k = 0; k < 4; ++k) {
        CHECK(table.chosen_index[i][static_cast<std::size_t>(k)] == 1);
        CHECK(measurekit::set_empty(
            table.chosen_set[i][static_cast<std::size_t>(k)]));
      }
    }
  }

  SUBCASE("membership rows are consistent with the chosen index") {
    const auto fam = GeneratingFamily::enumerate(1, 1);
    const auto table = selection_table(slope_family(), fam, halving(6));
    for (std::size_t i = 0; i < table.beta.size(); ++i) {
      for (std::size_t k = 0; k < 6; ++k) {
        const auto& row = table.y_membership[i][k];
        REQUIRE(row.size() == fam.items().size());
        // The chosen index is the first member of the row.
        std::size_t first = row.size();
        for (std::size_t n = 0; n < row.size(); ++n) {
          if (row[n]) {
            first = n;
            break;
          }
        }
        REQUIRE(first < row.size());
        CHECK(table.chosen_index[i][k] == measurekit::BigInt(first + 1));
      }
    }
  }
}

TEST_CASE("joint negative sets with the finite measurability partition") {
  SUBCASE("sections match the single-charge construction pointwise") {
    const ParametricCharge pc = slope_family();
    const auto fam = GeneratingFamily::exhaustive(1);
    const auto sched = halving(10);
    const auto joint = build_joint_X_minus(pc, fam, sched);
    REQUIRE(joint.sections.size() == pc.size());
    for (std::size_t i = 0; i < pc.size(); ++i) {
      const auto d = construct_hahn(pc.at(i), fam, sched);
      CHECK(measurekit::as_intervals(joint.sections[i]) ==
            measurekit::as_intervals(d.x_minus));
      CHECK(hahn_certificate(pc.at(i), joint.sections[i]).valid());
    }
  }

  SUBCASE("two regimes split the grid into two classes") {
    const ParametricCharge pc = ParametricCharge::make(
        ParamGrid::make({Rat(0), R("1/4"), R("1/2"), Rat(1)}),
        {Charge::density(1, {Rat(-1), Rat(2)}),
         Charge::density(1, {Rat(-1), Rat(2)}),
         Charge::density(1, {Rat(2), Rat(-1)}),
         Charge::density(1, {Rat(2), Rat(-1)})});
    const auto joint =
        build_joint_X_minus(pc, GeneratingFamily::enumerate(1, 1), halving(8));
    CHECK(measurekit::as_intervals(joint.sections[0]) == ivs({{"0", "1/2"}}));
    CHECK(measurekit::as_intervals(joint.sections[2]) == ivs({{"1/2", "1"}}));
    REQUIRE(joint.partition.size() == 2);
    CHECK(joint.partition[0] == std::vector<std::size_t>{0, 1});
    CHECK(joint.partition[1] == std::vector<std::size_t>{2, 3});
  }

  SUBCASE("constant families form a single class") {
    const ParametricCharge pc = ParametricCharge::make(
        ParamGrid::make({Rat(0), R("1/2"), Rat(1)}),
        {Charge::density(1, {Rat(-1), Rat(2)}),
         Charge::density(1, {Rat(-1), Rat(2)}),
         Charge::density(1, {Rat(-1), Rat(2)})});
    const auto joint =
        build_joint_X_minus(pc, GeneratingFamily::enumerate(1, 1), halving(8));
    REQUIRE(joint.partition.size() == 1);
    CHECK(joint.partition[0] == std::vector<std::size_t>{0, 1, 2});
  }

  SUBCASE("sections are literally constant on each partition class") {
    const auto joint = build_joint_X_minus(
        slope_family(), GeneratingFamily::exhaustive(1), halving(8));
    for (const auto& cls : joint.partition) {
      for (std::size_t idx : cls) {
        CHECK(measurekit::as_intervals(joint.sections[idx]) ==
              measurekit::as_intervals(joint.sections[cls.front()]));
      }
    }
  }
}

TEST_CASE("parallel and sequential runs produce identical results") {
  const ParametricCharge pc = slope_family();
  const auto fam = GeneratingFamily::exhaustive(1);
  const auto sched = halving(10);

  setenv("MEASUREKIT_WORKERS", "1", 1);
  const auto sequential = build_joint_X_minus(pc, fam, sched);
  setenv("MEASUREKIT_WORKERS", "4", 1);
  const auto parallel = build_joint_X_minus(pc, fam, sched);
  unsetenv("MEASUREKIT_WORKERS");

  REQUIRE(sequential.sections.size() == parallel.sections.size());
  for (std::size_t i = 0; i < sequential.sections.size(); ++i) {
    CHECK(measurekit::as_intervals(sequential.sections[i]) ==
          measurekit::as_intervals(parallel.sections[i]));
  }
  CHECK(sequential.partition == parallel.partition);
  CHECK(sequential.signatures == parallel.signatures);
}
