#pragma once

#include <cstdint>
#include <string>

#include "measurekit/json_io.hpp"
#include "measurekit/rn_field.hpp"

namespace measurekit {

// One CLI invocation's worth of parameters. Numeric fields stay as fraction
// strings until the pipeline parses them, so error messages can name flags.
struct RunConfig {
  std::string scenario;     // "hahn" | "rn" | "two-family"
  std::string charge_path;  // hahn
  std::string base_path;    // rn
  std::string family_path;  // rn
  std::string lam_path;     // two-family
  std::string mu_path;      // two-family

  int family_level = -1;      // -1: use the charge grid level
  int family_components = 0;  // 0: exhaustive family, else enumerate bound
  std::string eps0 = "1";
  std::string eps_ratio = "1/2";
  int terms = 24;
  std::string r_step = "1/64";
  std::string r_max;  // empty: automatic (largest cell ratio)

  std::string out_path;    // report JSON; empty = stdout only
  std::string table_path;  // rn/two-family CSV; empty = skip
};

struct Report {
  ordered_json body;            // serialized verbatim; byte-stable
  double duration_seconds = 0;  // wall clock; never serialized
};

Report run_hahn(const RunConfig& cfg);
Report run_rn(const RunConfig& cfg);
Report run_two_family(const RunConfig& cfg);

// Re-runs the scenario embedded in a report file and compares byte-for-byte;
// construction_error on any mismatch.
void verify_report(const std::string& report_path);

// Writes a deterministic instance. kind "atoms"/"density" produce
// <prefix>.json; "parametric" produces <prefix>_base.json and
// <prefix>_family.json (base normalized to total mass 1).
void gen_random_instance(std::uint64_t seed, const std::string& kind, int size,
                         const std::string& out_prefix);

}  // namespace measurekit
