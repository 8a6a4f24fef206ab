// Exact scalar arithmetic.  Every coefficient in the engine is a Rational;
// no floating point is used anywhere, so reruns are bit-identical.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dinv {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical text form: "p" for integers, "p/q" otherwise, q > 0, lowest terms.
inline std::string to_string(const Rational& r) { return r.str(); }

// Strict parse of "p" or "p/q" (optional leading '-' on either part).
// Round-trips to_string exactly.
inline Rational parse_rational(std::string_view s) {
  auto fail = [&] { throw std::invalid_argument("malformed rational: '" + std::string(s) + "'"); };
  if (s.empty()) fail();
  auto slash = s.find('/');
  std::string_view num_part = s.substr(0, slash);
  std::string_view den_part = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  auto check_int = [&](std::string_view p) {
    if (p.empty()) fail();
    std::size_t i = p[0] == '-' || p[0] == '+' ? 1 : 0;
    if (i == p.size()) fail();
    for (; i < p.size(); ++i)
      if (p[i] < '0' || p[i] > '9') fail();
  };
  check_int(num_part);
  check_int(den_part);
  if (num_part[0] == '+') num_part.remove_prefix(1);  // cpp_int rejects a leading '+'
  if (den_part[0] == '+') den_part.remove_prefix(1);
  Int num{std::string(num_part)};
  Int den{std::string(den_part)};
  if (den == 0) fail();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline Int factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int b = 1;
  for (int i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return b;
}

// q^e for any integer e (negative exponents invert; q must be nonzero then).
inline Rational pow_rational(const Rational& q, long e) {
  if (e < 0 && q == 0) throw std::domain_error("zero to a negative power");
  Rational base = e < 0 ? Rational(1) / q : q;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational acc = 1;
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

inline Rational pow2(long e) { return pow_rational(Rational(2), e); }

}  // namespace dinv
