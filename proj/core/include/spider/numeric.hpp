#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace spider {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Parses "3/10", "0.3", "1e-1" or "7" into an exact rational. Decimal input
/// is read digit by digit so "0.1" becomes exactly 1/10.
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

/// "a/b" or "a" when the denominator is one.
std::string to_string(const Rational& value);

/// Integer power by repeated squaring; works for double and Rational alike.
template <class T>
T ipow(T base, std::uint64_t exponent) {
  T result(1);
  while (exponent != 0) {
    if (exponent & 1U) {
      result *= base;
    }
    exponent >>= 1U;
    if (exponent != 0) {
      base *= base;
    }
  }
  return result;
}

/// Falling factorial m (m-1) ... (m-k+1); equals 1 for k = 0.
template <class T>
T falling_factorial(const T& m, std::uint64_t k) {
  T result(1);
  for (std::uint64_t j = 0; j < k; ++j) {
    result *= (m - T(j));
  }
  return result;
}

BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace spider
