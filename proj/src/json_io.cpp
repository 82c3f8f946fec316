#include "measurekit/json_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace measurekit {
namespace {

Rat parse_fraction_field(const ordered_json& j, const std::string& field) {
  if (!j.is_string()) {
    throw input_error(field + ": expected an exact fraction string");
  }
  return parse_fraction(j.get<std::string>(), field);
}

const ordered_json& require_key(const ordered_json& j, const std::string& key,
                                const std::string& field) {
  if (!j.is_object() || !j.contains(key)) {
    throw input_error(field + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

}  // namespace

ordered_json intervals_to_json(const IntervalUnionSet& set) {
  ordered_json out = ordered_json::array();
  for (const auto& iv : set.intervals()) {
    out.push_back({fraction_str(iv.first.to_rat()),
                   fraction_str(iv.second.to_rat())});
  }
  return out;
}

ordered_json set_to_json(const SetValue& set) {
  if (is_interval_set(set)) return intervals_to_json(as_intervals(set));
  ordered_json out = ordered_json::array();
  for (int m : as_atoms(set).members()) out.push_back(m);
  return out;
}

IntervalUnionSet parse_interval_set(const ordered_json& j,
                                    const std::string& field) {
  if (!j.is_array()) {
    throw input_error(field + ": expected an array of [lo, hi] pairs");
  }
  std::vector<IntervalUnionSet::Interval> raw;
  raw.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& pair = j.at(i);
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2) {
      throw input_error(where + ": expected a [lo, hi] pair");
    }
    const Rat lo = parse_fraction_field(pair.at(0), where + ".lo");
    const Rat hi = parse_fraction_field(pair.at(1), where + ".hi");
    raw.push_back({dyadic_from_rat(lo, where + ".lo"),
                   dyadic_from_rat(hi, where + ".hi")});
  }
  return IntervalUnionSet::canonical(std::move(raw));
}

AtomSet parse_atom_set(const ordered_json& j, int atom_count,
                       const std::string& field) {
  if (!j.is_array()) {
    throw input_error(field + ": expected an array of atom indices");
  }
  std::vector<int> members;
  members.reserve(j.size());
  for (const auto& entry : j) {
    if (!entry.is_number_integer()) {
      throw input_error(field + ": atom indices must be integers");
    }
    members.push_back(entry.get<int>());
  }
  return AtomSet(atom_count, members);
}

ordered_json charge_to_json(const Charge& charge) {
  ordered_json out;
  if (charge.kind() == ChargeKind::kAtoms) {
    out["kind"] = "atoms";
    ordered_json weights = ordered_json::array();
    for (const auto& w : charge.weights()) weights.push_back(fraction_str(w));
    out["weights"] = std::move(weights);
  } else {
    out["kind"] = "density";
    out["level"] = charge.level();
    ordered_json values = ordered_json::array();
    for (const auto& v : charge.values()) values.push_back(fraction_str(v));
    out["values"] = std::move(values);
  }
  return out;
}

Charge parse_charge(const ordered_json& j, const std::string& field) {
  const auto& kind = require_key(j, "kind", field);
  if (!kind.is_string()) {
    throw input_error(field + ".kind: expected \"atoms\" or \"density\"");
  }
  const std::string kind_name = kind.get<std::string>();
  if (kind_name == "atoms") {
    const auto& weights = require_key(j, "weights", field);
    if (!weights.is_array() || weights.empty()) {
      throw input_error(field + ".weights: expected a nonempty array");
    }
    std::vector<Rat> parsed;
    parsed.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      parsed.push_back(parse_fraction_field(
          weights.at(i), field + ".weights[" + std::to_string(i) + "]"));
    }
    return Charge::atoms(std::move(parsed));
  }
  if (kind_name == "density") {
    const auto& level = require_key(j, "level", field);
    if (!level.is_number_integer()) {
      throw input_error(field + ".level: expected an integer");
    }
    const auto& values = require_key(j, "values", field);
    if (!values.is_array()) {
      throw input_error(field + ".values: expected an array");
    }
    std::vector<Rat> parsed;
    parsed.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      parsed.push_back(parse_fraction_field(
          values.at(i), field + ".values[" + std::to_string(i) + "]"));
    }
    return Charge::density(level.get<int>(), std::move(parsed));
  }
  throw input_error(field + ".kind: unknown charge kind \"" + kind_name + "\"");
}

ordered_json parametric_to_json(const ParametricCharge& pc) {
  ordered_json out;
  ordered_json params = ordered_json::array();
  for (const auto& mu : pc.grid().points) params.push_back(fraction_str(mu));
  out["params"] = std::move(params);
  ordered_json charges = ordered_json::array();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    charges.push_back(charge_to_json(pc.at(i)));
  }
  out["charges"] = std::move(charges);
  return out;
}

ParametricCharge parse_parametric(const ordered_json& j,
                                  const std::string& field) {
  const auto& params = require_key(j, "params", field);
  if (!params.is_array() || params.empty()) {
    throw input_error(field + ".params: expected a nonempty array");
  }
  std::vector<Rat> points;
  points.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    points.push_back(parse_fraction_field(
        params.at(i), field + ".params[" + std::to_string(i) + "]"));
  }
  const auto& charges = require_key(j, "charges", field);
  if (!charges.is_array()) {
    throw input_error(field + ".charges: expected an array");
  }
  std::vector<Charge> parsed;
  parsed.reserve(charges.size());
  for (std::size_t i = 0; i < charges.size(); ++i) {
    parsed.push_back(parse_charge(charges.at(i),
                                  field + ".charges[" + std::to_string(i) + "]"));
  }
  return ParametricCharge::make(ParamGrid::make(std::move(points)),
                                std::move(parsed));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot write " + path);
  out << content;
  if (!out) throw input_error("failed while writing " + path);
}

ordered_json load_json(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

Charge load_charge(const std::string& path) {
  return parse_charge(load_json(path), path);
}

ParametricCharge load_parametric(const std::string& path) {
  return parse_parametric(load_json(path), path);
}

std::string json_to_string(const ordered_json& j) {
  return j.dump(2) + "\n";
}

}  // namespace measurekit
