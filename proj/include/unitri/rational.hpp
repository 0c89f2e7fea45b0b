#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace unitri {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Truncated (toward zero) decimal expansion with `digits` fractional digits.
inline std::string to_decimal(const Rational& r, int digits) {
  BigInt num = numerator(r);
  const BigInt den = denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  BigInt whole = num / den;
  BigInt rem = num % den;
  std::string out = sign + whole.str();
  if (digits <= 0) return out;
  out += '.';
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    out += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  BigInt b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace unitri
