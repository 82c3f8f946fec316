#include "measurekit/dyadic.hpp"

namespace measurekit {

Dyadic Dyadic::make(std::int64_t num, int level) {
  if (level < 0 || level > kMaxLevel) {
    throw input_error("dyadic level out of range: " + std::to_string(level));
  }
  if (num < 0 || num > (std::int64_t{1} << level)) {
    throw input_error("dyadic endpoint outside [0,1]: " + std::to_string(num) +
                      "/2^" + std::to_string(level));
  }
  while (level > 0 && num % 2 == 0) {
    num /= 2;
    --level;
  }
  return Dyadic{num, level};
}

bool operator<(const Dyadic& a, const Dyadic& b) {
  const int common = a.level > b.level ? a.level : b.level;
  return a.scaled_num(common) < b.scaled_num(common);
}

Dyadic dyadic_from_rat(const Rat& value, const std::string& field) {
  if (value < 0 || value > 1) {
    throw input_error("endpoint outside [0,1] in " + field + ": " +
                      fraction_str(value));
  }
  const BigInt den = rat_den(value);
  const unsigned level = boost::multiprecision::msb(den);
  if ((BigInt(1) << level) != den || level > Dyadic::kMaxLevel) {
    throw input_error("endpoint is not a dyadic rational in " + field + ": " +
                      fraction_str(value));
  }
  return Dyadic::make(static_cast<std::int64_t>(rat_num(value)),
                      static_cast<int>(level));
}

std::string dyadic_str(const Dyadic& value) { return fraction_str(value.to_rat()); }

}  // namespace measurekit
