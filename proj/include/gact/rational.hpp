#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gact {

// All measures and weights in the library are exact rationals; nothing is
// ever rounded to floating point.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical "p/q" rendering used by every report. Denominator is always
// printed, so "1" renders as "1/1"; this keeps report bytes stable.
inline std::string rational_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_of(long long num, long long den) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace gact
