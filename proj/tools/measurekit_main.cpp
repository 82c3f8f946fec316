#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "measurekit/runner.hpp"

namespace {

void report_done(const measurekit::Report& report,
                 const measurekit::RunConfig& cfg) {
  if (cfg.out_path.empty()) {
    std::cout << measurekit::json_to_string(report.body);
  }
  std::cerr << "completed in " << report.duration_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hahn decompositions and Radon-Nikodym derivative fields "
               "on dyadic grids"};
  app.require_subcommand(1);

  measurekit::RunConfig cfg;
  std::uint64_t seed = 1;
  std::string gen_kind = "atoms";
  int gen_size = 4;
  std::string gen_prefix = "instance";
  std::string report_path;

  auto add_schedule_flags = [&cfg](CLI::App* cmd) {
    cmd->add_option("--family-level", cfg.family_level,
                    "dyadic grid level of the generating family "
                    "(default: the charge's own level)");
    cmd->add_option("--family-components", cfg.family_components,
                    "enumerate members with at most this many components "
                    "(default 0 = every cell union)");
    cmd->add_option("--eps0", cfg.eps0, "tolerance scale (fraction)");
    cmd->add_option("--eps-ratio", cfg.eps_ratio,
                    "geometric tolerance ratio in (0,1)");
    cmd->add_option("--terms", cfg.terms, "number of schedule terms");
  };

  CLI::App* hahn = app.add_subcommand(
      "hahn", "Hahn decomposition of a signed charge with a defect certificate");
  hahn->add_option("--charge", cfg.charge_path, "charge JSON file")->required();
  add_schedule_flags(hahn);
  hahn->add_option("--out", cfg.out_path, "report JSON path (default: stdout)");

  CLI::App* rn = app.add_subcommand(
      "rn", "derivative field of a parametric family against a base measure");
  rn->add_option("--base", cfg.base_path, "base charge JSON file")->required();
  rn->add_option("--family", cfg.family_path, "parametric family JSON file")
      ->required();
  rn->add_option("--r-step", cfg.r_step, "threshold grid step (fraction)");
  rn->add_option("--r-max", cfg.r_max,
                 "threshold ceiling (default: largest cell ratio)");
  add_schedule_flags(rn);
  rn->add_option("--out", cfg.out_path, "report JSON path (default: stdout)");
  rn->add_option("--table", cfg.table_path, "field CSV path");

  CLI::App* two = app.add_subcommand(
      "two-family", "derivative field between two parametric families");
  two->add_option("--lambda", cfg.lam_path, "base family JSON file")->required();
  two->add_option("--mu", cfg.mu_path, "numerator family JSON file")->required();
  two->add_option("--r-step", cfg.r_step, "threshold grid step (fraction)");
  two->add_option("--r-max", cfg.r_max,
                  "threshold ceiling (default: largest cell ratio)");
  add_schedule_flags(two);
  two->add_option("--out", cfg.out_path, "report JSON path (default: stdout)");
  two->add_option("--table", cfg.table_path, "field CSV path");

  CLI::App* gen = app.add_subcommand("gen", "write a deterministic random instance");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--kind", gen_kind, "atoms | density | parametric");
  gen->add_option("--size", gen_size, "atom count or grid level");
  gen->add_option("--out", gen_prefix, "output path prefix");

  CLI::App* verify = app.add_subcommand(
      "verify", "re-run a report's embedded inputs and compare byte-for-byte");
  verify->add_option("--report", report_path, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (hahn->parsed()) {
      cfg.scenario = "hahn";
      report_done(measurekit::run_hahn(cfg), cfg);
    } else if (rn->parsed()) {
      cfg.scenario = "rn";
      report_done(measurekit::run_rn(cfg), cfg);
    } else if (two->parsed()) {
      cfg.scenario = "two-family";
      report_done(measurekit::run_two_family(cfg), cfg);
    } else if (gen->parsed()) {
      measurekit::gen_random_instance(seed, gen_kind, gen_size, gen_prefix);
      std::cerr << "instance written with prefix " << gen_prefix << "\n";
    } else if (verify->parsed()) {
      measurekit::verify_report(report_path);
      std::cerr << "report verified: " << report_path << "\n";
    }
  } catch (const measurekit::construction_error& e) {
    std::cerr << "construction failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
