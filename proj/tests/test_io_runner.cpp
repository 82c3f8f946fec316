#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "measurekit/runner.hpp"
#include "test_util.hpp"

using measurekit::Charge;
using measurekit::ordered_json;
using measurekit::ParametricCharge;
using measurekit::Rat;
using measurekit::Report;
using measurekit::RunConfig;
using testutil::ivs;
using testutil::R;

namespace {

namespace fs = std::filesystem;

std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

// Fresh scratch directory per test binary run.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("measurekit_io_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string scratch(const std::string& name) {
  return (scratch_dir() / name).string();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CLI_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("charge files round-trip exactly") {
  const Charge c = Charge::density(2, {Rat(1), Rat(-3), Rat(2), R("-1/8")});
  const ordered_json j = measurekit::charge_to_json(c);
  const Charge back = measurekit::parse_charge(j, "charge");
  CHECK(back.kind() == c.kind());
  CHECK(back.level() == c.level());
  CHECK(back.values() == c.values());

  const Charge a = Charge::atoms({R("1/2"), Rat(-2)});
  const Charge aback = measurekit::parse_charge(measurekit::charge_to_json(a), "charge");
  CHECK(aback.weights() == a.weights());
}

TEST_CASE("parse errors name the offending field") {
  SUBCASE("zero denominator") {
    const ordered_json j = {{"kind", "atoms"}, {"weights", {"1", "1/0"}}};
    try {
      measurekit::parse_charge(j, "charge");
      FAIL("expected an input error");
    } catch (const measurekit::input_error& e) {
      CHECK(std::string(e.what()).find("charge.weights[1]") !=
            std::string::npos);
    }
  }
  SUBCASE("missing keys and bad kinds") {
    CHECK_THROWS_AS(measurekit::parse_charge(ordered_json{{"kind", "atoms"}}, "charge"),
                    measurekit::input_error);
    CHECK_THROWS_AS(
        measurekit::parse_charge(ordered_json{{"kind", "blend"}, {"weights", {"1"}}},
                     "charge"),
        measurekit::input_error);
    CHECK_THROWS_AS(
        measurekit::parse_charge(
            ordered_json{{"kind", "density"}, {"level", 1}, {"values", {"1"}}},
            "charge"),
        measurekit::input_error);
  }
  SUBCASE("numbers must be fraction strings") {
    const ordered_json j = {{"kind", "atoms"}, {"weights", {1, 2}}};
    CHECK_THROWS_AS(measurekit::parse_charge(j, "charge"), measurekit::input_error);
  }
  SUBCASE("set literals validate endpoint pairs") {
    CHECK_THROWS_AS(
        measurekit::parse_interval_set(ordered_json::parse(R"([["0"]])"), "set"),
        measurekit::input_error);
    CHECK_THROWS_AS(
        measurekit::parse_interval_set(ordered_json::parse(R"([["1/2","1/4"]])"), "set"),
        measurekit::input_error);
    CHECK(measurekit::parse_interval_set(ordered_json::parse(R"([["0","1/2"]])"), "set") ==
          ivs({{"0", "1/2"}}));
  }
}

TEST_CASE("parametric charge files round-trip exactly") {
  const ParametricCharge pc = ParametricCharge::make(
      measurekit::ParamGrid::make({Rat(0), R("1/2")}),
      {Charge::density(1, {Rat(1), Rat(1)}),
       Charge::density(1, {R("1/2"), R("3/2")})});
  const ordered_json j = measurekit::parametric_to_json(pc);
  const ParametricCharge back = measurekit::parse_parametric(j, "family");
  CHECK(back.grid().points == pc.grid().points);
  REQUIRE(back.size() == pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) {
    CHECK(back.at(i).values() == pc.at(i).values());
  }
  CHECK_THROWS_AS(
      measurekit::parse_parametric(ordered_json{{"params", {"0"}}, {"charges",
                                    ordered_json::array()}},
                       "family"),
      measurekit::input_error);
}

TEST_CASE("generated instances are deterministic in the seed") {
  measurekit::gen_random_instance(1, "atoms", 4, scratch("a"));
  measurekit::gen_random_instance(1, "atoms", 4, scratch("b"));
  const std::string a = measurekit::read_text_file(scratch("a.json"));
  CHECK(a == measurekit::read_text_file(scratch("b.json")));

  SUBCASE("seed-1 four-atom instance matches the committed golden file") {
    CHECK(a == measurekit::read_text_file(data_path("gen_seed1_atoms4.json")));
  }
  SUBCASE("different seeds differ") {
    measurekit::gen_random_instance(2, "atoms", 4, scratch("c"));
    CHECK(a != measurekit::read_text_file(scratch("c.json")));
  }
  SUBCASE("parametric instances normalize the base to total mass one") {
    measurekit::gen_random_instance(9, "parametric", 4, scratch("p"));
    const Charge base = measurekit::load_charge(scratch("p_base.json"));
    CHECK(base.total_mass() == Rat(1));
    const ParametricCharge fam =
        measurekit::load_parametric(scratch("p_family.json"));
    for (std::size_t i = 0; i < fam.size(); ++i) {
      CHECK(fam.at(i).total_mass() == Rat(1));
    }
  }
}

TEST_CASE("scenario runs produce byte-stable, verifiable reports") {
  RunConfig cfg;
  cfg.scenario = "hahn";
  cfg.charge_path = data_path("demo_piecewise.json");

  SUBCASE("the bundled demo matches its committed golden report") {
    const Report rep = run_hahn(cfg);
    CHECK(measurekit::json_to_string(rep.body) ==
          measurekit::read_text_file(data_path("demo_piecewise_report.json")));
  }

  SUBCASE("reports round-trip through their serialization") {
    const Report rep = run_hahn(cfg);
    const std::string text = measurekit::json_to_string(rep.body);
    CHECK(measurekit::json_to_string(ordered_json::parse(text)) == text);
  }

  SUBCASE("repeated runs are byte-identical") {
    const Report once = run_hahn(cfg);
    const Report twice = run_hahn(cfg);
    CHECK(measurekit::json_to_string(once.body) ==
          measurekit::json_to_string(twice.body));
  }

  SUBCASE("stored reports verify and tampered ones fail") {
    cfg.out_path = scratch("demo_report.json");
    run_hahn(cfg);
    CHECK_NOTHROW(measurekit::verify_report(cfg.out_path));

    ordered_json body = measurekit::load_json(cfg.out_path);
    body["beta"] = "-99";
    measurekit::write_text_file(scratch("tampered.json"),
                                measurekit::json_to_string(body));
    CHECK_THROWS_AS(measurekit::verify_report(scratch("tampered.json")),
                    measurekit::construction_error);
  }
}

TEST_CASE("identity-family scenario reports a constant unit derivative") {
  measurekit::write_text_file(
      scratch("unit_base.json"),
      measurekit::json_to_string(
          measurekit::charge_to_json(Charge::density(0, {Rat(1)}))));
  const ParametricCharge fam = ParametricCharge::make(
      measurekit::ParamGrid::make({Rat(0), R("1/2"), Rat(1)}),
      {Charge::density(0, {Rat(1)}), Charge::density(0, {Rat(1)}),
       Charge::density(0, {Rat(1)})});
  measurekit::write_text_file(
      scratch("unit_family.json"),
      measurekit::json_to_string(measurekit::parametric_to_json(fam)));

  RunConfig cfg;
  cfg.scenario = "rn";
  cfg.base_path = scratch("unit_base.json");
  cfg.family_path = scratch("unit_family.json");
  cfg.r_step = "1/4";
  cfg.table_path = scratch("unit_field.csv");
  const Report rep = run_rn(cfg);

  const auto& defects = rep.body.at("null_defects");
  CHECK(defects.at("all_zero").get<bool>());
  for (const auto& battery : rep.body.at("residuals")) {
    for (const auto& item : battery) {
      CHECK(item.at("residual").get<std::string>() == "0");
    }
  }
  // Every CSV row reports the derivative value 1.
  const std::string csv = measurekit::read_text_file(cfg.table_path);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "mu,nu_cell_left,f");
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "1");
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("worker count does not change any output bytes") {
  measurekit::gen_random_instance(5, "parametric", 5, scratch("w"));
  RunConfig cfg;
  cfg.scenario = "rn";
  cfg.base_path = scratch("w_base.json");
  cfg.family_path = scratch("w_family.json");
  cfg.r_step = "1/8";

  setenv("MEASUREKIT_WORKERS", "1", 1);
  const Report seq = run_rn(cfg);
  setenv("MEASUREKIT_WORKERS", "4", 1);
  const Report par = run_rn(cfg);
  unsetenv("MEASUREKIT_WORKERS");
  CHECK(measurekit::json_to_string(seq.body) ==
        measurekit::json_to_string(par.body));
}

TEST_CASE("command line exit codes distinguish failure kinds") {
  SUBCASE("success is zero") {
    CHECK(run_cli("hahn --charge " + data_path("demo_piecewise.json")) == 0);
  }
  SUBCASE("generated instances verify end to end") {
    const std::string prefix = scratch("cli_gen");
    CHECK(run_cli("gen --seed 3 --kind density --size 3 --out " + prefix) == 0);
    CHECK(run_cli("hahn --charge " + prefix + ".json --out " + prefix +
                  "_report.json") == 0);
    CHECK(run_cli("verify --report " + prefix + "_report.json") == 0);
  }
  SUBCASE("input errors are one") {
    CHECK(run_cli("hahn --charge " + scratch("missing.json")) == 1);
    measurekit::write_text_file(scratch("bad.json"),
                                "{\"kind\":\"atoms\",\"weights\":[\"1/0\"]}\n");
    CHECK(run_cli("hahn --charge " + scratch("bad.json")) == 1);
    CHECK(run_cli("nonsense") == 1);
    CHECK(run_cli("hahn") == 1);
  }
  SUBCASE("construction failures are two") {
    RunConfig cfg;
    cfg.scenario = "hahn";
    cfg.charge_path = data_path("demo_piecewise.json");
    cfg.out_path = scratch("cli_tamper.json");
    run_hahn(cfg);
    ordered_json body = measurekit::load_json(cfg.out_path);
    body["x_minus"] = ordered_json::array();
    measurekit::write_text_file(cfg.out_path,
                                measurekit::json_to_string(body));
    CHECK(run_cli("verify --report " + cfg.out_path) == 2);
  }
}
