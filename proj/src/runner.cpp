#include "measurekit/runner.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace measurekit {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

GeneratingFamily family_for(const Charge& charge, const RunConfig& cfg,
                            int min_level = -1) {
  if (charge.kind() == ChargeKind::kAtoms) {
    return GeneratingFamily::atom_subsets(charge.atom_count());
  }
  const int level = cfg.family_level >= 0
                        ? cfg.family_level
                        : std::max(charge.level(), min_level);
  if (cfg.family_components > 0) {
    return GeneratingFamily::enumerate(level, cfg.family_components);
  }
  return GeneratingFamily::exhaustive(level);
}

EpsSchedule schedule_for(const RunConfig& cfg) {
  return EpsSchedule::make(parse_fraction(cfg.eps0, "--eps0"),
                           parse_fraction(cfg.eps_ratio, "--eps-ratio"),
                           cfg.terms);
}

ordered_json config_echo(const RunConfig& cfg) {
  ordered_json j;
  j["family_level"] = cfg.family_level;
  j["family_components"] = cfg.family_components;
  j["eps0"] = cfg.eps0;
  j["eps_ratio"] = cfg.eps_ratio;
  j["terms"] = cfg.terms;
  if (cfg.scenario != "hahn") {
    j["r_step"] = cfg.r_step;
    j["r_max"] = cfg.r_max.empty() ? "auto" : cfg.r_max;
  }
  return j;
}

RationalGrid grid_for(const RunConfig& cfg, const Rat& auto_r_max) {
  const Rat step = parse_fraction(cfg.r_step, "--r-step");
  Rat top;
  if (cfg.r_max.empty()) {
    top = auto_r_max > 0 ? auto_r_max : step;
  } else {
    top = parse_fraction(cfg.r_max, "--r-max");
  }
  return RationalGrid::make(step, top);
}

// Fixed battery of test sets for the integral-identity residuals.
const std::vector<std::pair<std::string, IntervalUnionSet>>& test_battery() {
  static const auto* battery = [] {
    auto make = [](std::initializer_list<std::pair<Rat, Rat>> spans) {
      std::vector<IntervalUnionSet::Interval> raw;
      for (const auto& [lo, hi] : spans) {
        raw.push_back({dyadic_from_rat(lo, "battery"),
                       dyadic_from_rat(hi, "battery")});
      }
      return IntervalUnionSet::canonical(std::move(raw));
    };
    auto* sets = new std::vector<std::pair<std::string, IntervalUnionSet>>;
    sets->push_back({"full", IntervalUnionSet::full()});
    sets->push_back({"lower half", make({{Rat(0), Rat(1, 2)}})});
    sets->push_back({"middle half", make({{Rat(1, 4), Rat(3, 4)}})});
    sets->push_back({"two quarters", make({{Rat(0), Rat(1, 4)},
                                           {Rat(1, 2), Rat(3, 4)}})});
    sets->push_back({"top eighth", make({{Rat(7, 8), Rat(1)}})});
    return sets;
  }();
  return *battery;
}

ordered_json certificate_json(const HahnCertificate& cert) {
  ordered_json j;
  j["pos"] = fraction_str(cert.pos_defect);
  j["neg"] = fraction_str(cert.neg_defect);
  return j;
}

// Shared rn / two-family report: sections, β matrix, defects, residuals.
ordered_json field_report(const DerivativeField& df,
                          const ParametricCharge& numerators,
                          const std::function<const Charge&(std::size_t)>& base_at,
                          const NullDefects& defects) {
  const LevelSetFamily& lf = df.family;
  ordered_json j;

  ordered_json params = ordered_json::array();
  for (const auto& mu : lf.grid.points) params.push_back(fraction_str(mu));
  j["params"] = std::move(params);

  ordered_json rgrid;
  rgrid["step"] = fraction_str(lf.rgrid.step);
  rgrid["r_max"] = fraction_str(lf.rgrid.r_max());
  j["r_grid"] = std::move(rgrid);
  j["cell_level"] = lf.cell_level;

  ordered_json stabilized = ordered_json::array();
  for (char s : lf.stabilized) stabilized.push_back(s != 0);
  j["stabilized"] = std::move(stabilized);

  ordered_json s0 = ordered_json::array();
  for (const auto& set : lf.s0) s0.push_back(intervals_to_json(set));
  j["s0"] = std::move(s0);

  ordered_json sections = ordered_json::array();
  for (std::size_t i = 0; i < lf.grid.size(); ++i) {
    ordered_json per_r = ordered_json::array();
    for (std::size_t r = 0; r < lf.rgrid.size(); ++r) {
      per_r.push_back(intervals_to_json(lf.x_sections[i][r]));
    }
    sections.push_back(std::move(per_r));
  }
  j["x_sections"] = std::move(sections);

  ordered_json nd;
  ordered_json s0_mass = ordered_json::array();
  for (const auto& m : defects.s0_mass) s0_mass.push_back(fraction_str(m));
  nd["s0_mass"] = std::move(s0_mass);
  nd["max_pair_defect"] = fraction_str(defects.max_pair_defect);
  nd["max_raw_pair_defect"] = fraction_str(defects.max_raw_pair_defect);
  nd["all_zero"] = defects.all_zero;
  j["null_defects"] = std::move(nd);

  ordered_json residuals = ordered_json::array();
  for (std::size_t i = 0; i < lf.grid.size(); ++i) {
    const Rat& mu = lf.grid.points[i];
    ordered_json per_set = ordered_json::array();
    for (const auto& [name, test_set] : test_battery()) {
      // Same computation as verify_rn_identity, but against base_at(i) so the
      // two-family report uses each parameter's own base measure.
      Rat integral = 0;
      const Rat width = Rat(1) / (BigInt(1) << lf.cell_level);
      for (std::size_t c = 0; c < (std::size_t{1} << lf.cell_level); ++c) {
        const IntervalUnionSet piece = set_intersect(
            test_set,
            IntervalUnionSet::cell(lf.cell_level, static_cast<std::int64_t>(c)));
        if (piece.empty()) continue;
        integral += evaluate_derivative(df, mu, Rat(c) * width) *
                    charge_eval(base_at(i), piece);
      }
      Rat residual = integral - charge_eval(numerators.at(i), test_set);
      if (residual < 0) residual = -residual;
      ordered_json entry;
      entry["set"] = name;
      entry["residual"] = fraction_str(residual);
      entry["bound"] =
          fraction_str(lf.rgrid.step * charge_eval(base_at(i), test_set));
      per_set.push_back(std::move(entry));
    }
    residuals.push_back(std::move(per_set));
  }
  j["residuals"] = std::move(residuals);
  return j;
}

std::string field_csv(const DerivativeField& df) {
  const LevelSetFamily& lf = df.family;
  const Rat width = Rat(1) / (BigInt(1) << lf.cell_level);
  std::string csv = "mu,nu_cell_left,f\n";
  for (const auto& mu : lf.grid.points) {
    for (std::size_t c = 0; c < (std::size_t{1} << lf.cell_level); ++c) {
      const Rat left = Rat(c) * width;
      csv += fraction_str(mu);
      csv += ',';
      csv += fraction_str(left);
      csv += ',';
      csv += fraction_str(evaluate_derivative(df, mu, left));
      csv += '\n';
    }
  }
  return csv;
}

void emit(const Report& report, const RunConfig& cfg) {
  if (!cfg.out_path.empty()) {
    write_text_file(cfg.out_path, json_to_string(report.body));
  }
}

Report finish(ordered_json body, const RunConfig& cfg,
              Clock::time_point start) {
  Report report{std::move(body), seconds_since(start)};
  emit(report, cfg);
  return report;
}

Report run_hahn_from(const ordered_json& charge_json, const RunConfig& cfg,
                     Clock::time_point start) {
  const Charge charge = parse_charge(charge_json, "charge");
  const GeneratingFamily family = family_for(charge, cfg);
  const EpsSchedule sched = schedule_for(cfg);
  const HahnDecomposition d = construct_hahn(charge, family, sched);

  ordered_json body;
  body["scenario"] = "hahn";
  body["config"] = config_echo(cfg);
  body["inputs"] = ordered_json{{"charge", charge_json}};
  body["x_minus"] = set_to_json(d.x_minus);
  body["beta"] = fraction_str(d.beta);
  body["defects"] = certificate_json(d.certificate);
  body["stabilized"] = d.stabilized;
  return finish(std::move(body), cfg, start);
}

Report run_rn_from(const ordered_json& base_json, const ordered_json& fam_json,
                   const RunConfig& cfg, Clock::time_point start) {
  const Charge base = parse_charge(base_json, "base");
  const ParametricCharge fam = parse_parametric(fam_json, "family");
  const GeneratingFamily family = family_for(base, cfg, fam.level());
  const EpsSchedule sched = schedule_for(cfg);
  const RationalGrid rgrid = grid_for(cfg, max_cell_ratio(base, fam));

  DerivativeField df =
      make_derivative_field(build_level_family(base, fam, rgrid, family, sched));
  const NullDefects defects = null_defects(df.family, base);

  ordered_json body;
  body["scenario"] = "rn";
  body["config"] = config_echo(cfg);
  body["inputs"] = ordered_json{{"base", base_json}, {"family", fam_json}};
  ordered_json field = field_report(
      df, fam, [&](std::size_t) -> const Charge& { return base; }, defects);
  for (auto& [key, value] : field.items()) body[key] = std::move(value);

  if (!cfg.table_path.empty()) write_text_file(cfg.table_path, field_csv(df));
  return finish(std::move(body), cfg, start);
}

Report run_two_family_from(const ordered_json& lam_json,
                           const ordered_json& mu_json, const RunConfig& cfg,
                           Clock::time_point start) {
  const ParametricCharge lam = parse_parametric(lam_json, "lambda family");
  const ParametricCharge mu = parse_parametric(mu_json, "mu family");
  const GeneratingFamily family =
      family_for(lam.at(0), cfg, std::max(lam.level(), mu.level()));
  const EpsSchedule sched = schedule_for(cfg);
  const RationalGrid rgrid = grid_for(cfg, max_cell_ratio(lam, mu));

  DerivativeField df = two_family_rn(lam, mu, rgrid, family, sched);
  const NullDefects defects = null_defects(df.family, lam);

  ordered_json body;
  body["scenario"] = "two-family";
  body["config"] = config_echo(cfg);
  body["inputs"] = ordered_json{{"lambda", lam_json}, {"mu", mu_json}};
  ordered_json field = field_report(
      df, mu, [&](std::size_t i) -> const Charge& { return lam.at(i); },
      defects);
  for (auto& [key, value] : field.items()) body[key] = std::move(value);

  if (!cfg.table_path.empty()) write_text_file(cfg.table_path, field_csv(df));
  return finish(std::move(body), cfg, start);
}

RunConfig config_from_echo(const ordered_json& body) {
  RunConfig cfg;
  cfg.scenario = body.at("scenario").get<std::string>();
  const ordered_json& echo = body.at("config");
  cfg.family_level = echo.at("family_level").get<int>();
  cfg.family_components = echo.at("family_components").get<int>();
  cfg.eps0 = echo.at("eps0").get<std::string>();
  cfg.eps_ratio = echo.at("eps_ratio").get<std::string>();
  cfg.terms = echo.at("terms").get<int>();
  if (echo.contains("r_step")) {
    cfg.r_step = echo.at("r_step").get<std::string>();
    const std::string r_max = echo.at("r_max").get<std::string>();
    if (r_max != "auto") cfg.r_max = r_max;
  }
  return cfg;
}

}  // namespace

Report run_hahn(const RunConfig& cfg) {
  const auto start = Clock::now();
  return run_hahn_from(load_json(cfg.charge_path), cfg, start);
}

Report run_rn(const RunConfig& cfg) {
  const auto start = Clock::now();
  return run_rn_from(load_json(cfg.base_path), load_json(cfg.family_path), cfg,
                     start);
}

Report run_two_family(const RunConfig& cfg) {
  const auto start = Clock::now();
  return run_two_family_from(load_json(cfg.lam_path), load_json(cfg.mu_path),
                             cfg, start);
}

void verify_report(const std::string& report_path) {
  const ordered_json body = load_json(report_path);
  if (!body.is_object() || !body.contains("scenario") ||
      !body.contains("inputs")) {
    throw input_error(report_path + ": not a report file");
  }
  RunConfig cfg = config_from_echo(body);
  const ordered_json& inputs = body.at("inputs");
  const auto start = Clock::now();
  Report fresh;
  if (cfg.scenario == "hahn") {
    fresh = run_hahn_from(inputs.at("charge"), cfg, start);
  } else if (cfg.scenario == "rn") {
    fresh = run_rn_from(inputs.at("base"), inputs.at("family"), cfg, start);
  } else if (cfg.scenario == "two-family") {
    fresh = run_two_family_from(inputs.at("lambda"), inputs.at("mu"), cfg,
                                start);
  } else {
    throw input_error(report_path + ": unknown scenario \"" + cfg.scenario +
                      "\"");
  }
  if (json_to_string(fresh.body) != json_to_string(body)) {
    throw construction_error(report_path +
                             ": stored report does not match a fresh run");
  }
  if (body.contains("defects")) {
    const ordered_json& defects = body.at("defects");
    if (defects.at("pos").get<std::string>() != "0" ||
        defects.at("neg").get<std::string>() != "0") {
      throw construction_error(report_path + ": nonzero defect certificate");
    }
  }
  if (body.contains("null_defects") &&
      !body.at("null_defects").at("all_zero").get<bool>()) {
    throw construction_error(report_path + ": nonzero null-set defects");
  }
}

namespace {

// Bounded draw from the engine; bias is irrelevant here, determinism is not.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

Rat random_signed_rat(std::mt19937_64& rng) {
  static const int dens[] = {1, 2, 4, 8};
  const auto num = static_cast<std::int64_t>(draw(rng, 19)) - 9;  // -9..9
  const int den = dens[draw(rng, 4)];
  return Rat(num, den);
}

std::vector<Rat> normalized_positive_density(std::mt19937_64& rng,
                                             std::size_t cells) {
  std::vector<Rat> values(cells);
  Rat total = 0;
  const Rat width = Rat(1, static_cast<std::int64_t>(cells));
  for (auto& v : values) {
    v = Rat(1 + static_cast<std::int64_t>(draw(rng, 16)), 8);  // 1/8 .. 2
    total += v * width;
  }
  for (auto& v : values) v /= total;
  return values;
}

}  // namespace

void gen_random_instance(std::uint64_t seed, const std::string& kind, int size,
                         const std::string& out_prefix) {
  std::mt19937_64 rng(seed);
  if (kind == "atoms") {
    if (size < 1 || size > 16) {
      throw input_error("atom instance size must lie in [1, 16]");
    }
    std::vector<Rat> weights(static_cast<std::size_t>(size));
    for (auto& w : weights) w = random_signed_rat(rng);
    write_text_file(out_prefix + ".json",
                    json_to_string(charge_to_json(Charge::atoms(weights))));
    return;
  }
  if (kind == "density") {
    if (size < 0 || size > 8) {
      throw input_error("density instance level must lie in [0, 8]");
    }
    std::vector<Rat> values(std::size_t{1} << size);
    for (auto& v : values) v = random_signed_rat(rng);
    write_text_file(out_prefix + ".json",
                    json_to_string(charge_to_json(Charge::density(size, values))));
    return;
  }
  if (kind == "parametric") {
    if (size < 0 || size > 6) {
      throw input_error("parametric instance level must lie in [0, 6]");
    }
    const std::size_t cells = std::size_t{1} << size;
    const Charge base = Charge::density(size, normalized_positive_density(rng, cells));
    std::vector<Rat> points;
    std::vector<Charge> charges;
    for (int i = 0; i <= 8; ++i) {
      points.push_back(Rat(i, 8));
      charges.push_back(
          Charge::density(size, normalized_positive_density(rng, cells)));
    }
    const ParametricCharge fam =
        ParametricCharge::make(ParamGrid::make(points), charges);
    write_text_file(out_prefix + "_base.json",
                    json_to_string(charge_to_json(base)));
    write_text_file(out_prefix + "_family.json",
                    json_to_string(parametric_to_json(fam)));
    return;
  }
  throw input_error("unknown instance kind \"" + kind +
                    "\" (expected atoms, density, or parametric)");
}

}  // namespace measurekit
