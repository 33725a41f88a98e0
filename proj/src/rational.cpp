#include "pbexact/rational.hpp"
#include "pbexact/errors.hpp"

#include <cctype>

namespace pbexact {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

BigInt parse_int_part(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw InputError("not a rational: \"" + std::string(whole) + "\"");
  BigInt v{std::string(s)};
  return neg ? BigInt(-v) : v;
}

} // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rat(parse_int_part(text, text));
  BigInt num = parse_int_part(text.substr(0, slash), text);
  std::string_view den_part = text.substr(slash + 1);
  if (!all_digits(den_part))
    throw InputError("not a rational: \"" + std::string(text) + "\"");
  BigInt den{std::string(den_part)};
  if (den == 0)
    throw InputError("zero denominator: \"" + std::string(text) + "\"");
  return Rat(num, den);
}

std::string format_rat(const Rat& q) {
  const BigInt& num = boost::multiprecision::numerator(q);
  const BigInt& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt rat_floor(const Rat& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quo = num / den; // truncates toward zero
  if (num < 0 && quo * den != num) --quo;
  return quo;
}

BigInt rat_ceil(const Rat& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt quo = num / den;
  if (num > 0 && quo * den != num) ++quo;
  return quo;
}

} // namespace pbexact
