#pragma once

#include <cstdint>
#include <vector>

#include "spider/numeric.hpp"

namespace spider {

/// Polynomial in the horizon n and the probability p with exact rational
/// coefficients, evaluable in binary64 or exactly.
class Bivariate {
 public:
  Bivariate() = default;
  Bivariate(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Bivariate(long long constant);        // NOLINT(google-explicit-constructor)

  static Bivariate n();
  static Bivariate p();

  /// Coefficient of n^n_power p^p_power.
  Rational coeff(std::size_t n_power, std::size_t p_power) const;
  /// Highest power of n with a nonzero coefficient; 0 for constants and zero.
  std::size_t n_degree() const noexcept;
  std::size_t p_degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  /// No dependence on n.
  bool is_p_only() const noexcept { return terms_.size() <= 1; }

  Bivariate& operator+=(const Bivariate& rhs);
  Bivariate& operator-=(const Bivariate& rhs);
  Bivariate& operator*=(const Bivariate& rhs);
  friend Bivariate operator+(Bivariate a, const Bivariate& b) { return a += b; }
  friend Bivariate operator-(Bivariate a, const Bivariate& b) { return a -= b; }
  friend Bivariate operator*(Bivariate a, const Bivariate& b) { return a *= b; }
  friend Bivariate operator-(Bivariate a);
  friend bool operator==(const Bivariate&, const Bivariate&) = default;

  Bivariate pow(std::uint64_t exponent) const;

  template <class T>
  T eval(const T& n_value, const T& p_value) const;

  /// Outer list runs over decreasing powers of n from n_degree() down to 0;
  /// each inner list holds that coefficient's polynomial in p, again in
  /// decreasing powers down to p^0.
  std::vector<std::vector<Rational>> descending() const;

 private:
  void trim();

  // terms_[i][j] is the coefficient of n^i p^j.
  std::vector<std::vector<Rational>> terms_;
};

Bivariate pow(const Bivariate& base, std::uint64_t exponent);

/// Ratio of two bivariate polynomials; the catalog only uses denominators
/// that depend on n.
struct RationalFunction {
  Bivariate numerator;
  Bivariate denominator = Bivariate(1);

  template <class T>
  T eval(const T& n_value, const T& p_value) const {
    return numerator.eval(n_value, p_value) / denominator.eval(n_value, p_value);
  }
};

}  // namespace spider
