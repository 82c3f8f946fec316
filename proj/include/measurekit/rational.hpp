#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace measurekit {

// All core arithmetic is exact. No floating point anywhere in the library.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Bad input: malformed file, bad flag, kind mismatch, violated precondition.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction invariant failed (nonzero defect certificate and the like).
struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses an exact fraction string ("-3/8", "2"). `field` names the offending
// input in error messages.
Rat parse_fraction(const std::string& text, const std::string& field);

// Canonical fraction string: "p/q" in lowest terms, "p" when q == 1.
std::string fraction_str(const Rat& value);

// floor(value / delta), delta > 0.
BigInt floor_quotient(const Rat& value, const Rat& delta);

inline BigInt rat_num(const Rat& v) { return boost::multiprecision::numerator(v); }
inline BigInt rat_den(const Rat& v) { return boost::multiprecision::denominator(v); }

}  // namespace measurekit
