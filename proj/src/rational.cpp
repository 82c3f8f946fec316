#include "measurekit/rational.hpp"

#include <cctype>

namespace measurekit {

namespace {

bool valid_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_fraction(const std::string& text, const std::string& field) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer(text)) {
      throw input_error("malformed fraction \"" + text + "\" in " + field);
    }
    return Rat(BigInt(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den)) {
    throw input_error("malformed fraction \"" + text + "\" in " + field);
  }
  const BigInt d(den);
  if (d == 0) {
    throw input_error("zero denominator in " + field + ": \"" + text + "\"");
  }
  return Rat(BigInt(num), d);
}

std::string fraction_str(const Rat& value) {
  const BigInt num = rat_num(value);
  const BigInt den = rat_den(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt floor_quotient(const Rat& value, const Rat& delta) {
  if (delta <= 0) throw input_error("floor_quotient requires delta > 0");
  const Rat q = value / delta;
  const BigInt n = rat_num(q);
  const BigInt d = rat_den(q);
  BigInt f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) --f;
  return f;
}

}  // namespace measurekit
