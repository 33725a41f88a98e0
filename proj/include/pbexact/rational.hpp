#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace pbexact {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always in lowest terms with positive denominator.
// The only number type used in rule logic.
using Rat = boost::multiprecision::cpp_rational;

// Accepts "p", "-p", "p/q", "-p/q" with q > 0 after sign normalization.
// Anything else (floats, spaces, empty) raises InputError.
Rat parse_rat(std::string_view text);

// Inverse of parse_rat; integers print without a slash.
std::string format_rat(const Rat& q);

BigInt rat_floor(const Rat& q);
BigInt rat_ceil(const Rat& q);

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

} // namespace pbexact
