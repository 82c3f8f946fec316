#pragma once

#include <string>

#include "json.hpp"
#include "measurekit/parametric.hpp"

namespace measurekit {

// All files carry exact fraction strings; keys keep insertion order so that
// serialization is byte-stable.
using ordered_json = nlohmann::ordered_json;

ordered_json intervals_to_json(const IntervalUnionSet& set);
ordered_json set_to_json(const SetValue& set);  // atom sets become index arrays

IntervalUnionSet parse_interval_set(const ordered_json& j,
                                    const std::string& field);
AtomSet parse_atom_set(const ordered_json& j, int atom_count,
                       const std::string& field);

ordered_json charge_to_json(const Charge& charge);
Charge parse_charge(const ordered_json& j, const std::string& field);

ordered_json parametric_to_json(const ParametricCharge& pc);
ParametricCharge parse_parametric(const ordered_json& j,
                                  const std::string& field);

// File helpers. Parse errors carry the path; JSON syntax errors keep the
// parser's line/column context.
ordered_json load_json(const std::string& path);
Charge load_charge(const std::string& path);
ParametricCharge load_parametric(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Canonical on-disk form: two-space indentation plus a trailing newline.
std::string json_to_string(const ordered_json& j);

}  // namespace measurekit
