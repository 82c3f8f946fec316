#pragma once

#include <cstdint>

#include "measurekit/rational.hpp"

namespace measurekit {

// Dyadic rational num / 2^level restricted to [0, 1].
// Canonical form: num odd, or level == 0.
struct Dyadic {
  std::int64_t num = 0;
  int level = 0;

  // Levels are capped so that comparisons at a common level stay in int64.
  static constexpr int kMaxLevel = 56;

  static Dyadic make(std::int64_t num, int level);
  static Dyadic zero() { return {0, 0}; }
  static Dyadic one() { return {1, 0}; }

  // Numerator rescaled to a coarser-or-equal target level (target >= level).
  std::int64_t scaled_num(int target_level) const {
    return num << (target_level - level);
  }

  Rat to_rat() const { return Rat(BigInt(num), BigInt(1) << level); }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
};

bool operator<(const Dyadic& a, const Dyadic& b);
inline bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
inline bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
inline bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

// Conversion from an exact rational; errors unless the value is a dyadic
// rational in [0, 1] with level <= kMaxLevel.
Dyadic dyadic_from_rat(const Rat& value, const std::string& field);

std::string dyadic_str(const Dyadic& value);

}  // namespace measurekit
