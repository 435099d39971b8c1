#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace rcfluct {

// All combinatorial counts and theory values are kept exact: counts mix
// factorials up to (2k)! with alternating sums, so floating point would
// cancel silently. A double view is derived only at the reporting edge.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k) by the multiplicative formula.
/// Exact at every step; returns 0 for k < 0 or k > n.
inline BigInt binomial(const BigInt& n, long k) {
  if (k < 0) return 0;
  if (n >= 0 && BigInt(k) > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // divides exactly: r is C(n-k+i, i) * i! / i! at each step
  }
  return r;
}

inline BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

/// base^exp for non-negative integer exponents.
inline BigInt pow_int(const BigInt& base, long exp) {
  if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
  BigInt r = 1, b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// Parses "3", "-2/7" or a plain decimal like "0.25" into an exact rational.
inline BigRat parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return BigRat(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    long frac_len = static_cast<long>(text.size() - dot - 1);
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("parse_rational: malformed decimal");
    return BigRat(BigInt(digits), pow_int(10, frac_len));
  }
  return BigRat(BigInt(text));
}

/// "num/den" for non-integers, plain "num" otherwise.
inline std::string rational_string(const BigRat& r) {
  BigInt num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace rcfluct
