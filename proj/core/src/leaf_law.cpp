#include "spider/leaf_law.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/binomial.hpp>

namespace spider {

template <class T>
LeafLaw<T>::LeafLaw(std::uint64_t n_, T p_) : n(n_), p(std::move(p_)) {
  if (n == 0) {
    throw std::invalid_argument("LeafLaw: n must be at least 1");
  }
  if (!(p > T(0) && p < T(1))) {
    throw std::invalid_argument("LeafLaw: p must lie strictly between 0 and 1");
  }
}

template <class T>
T leaf_pmf(const LeafLaw<T>& law, std::int64_t k) {
  if (k < 3 || static_cast<std::uint64_t>(k) > law.support_max()) {
    return T(0);
  }
  const std::uint64_t trials = law.n - 1;
  const auto successes = static_cast<std::uint64_t>(k - 3);
  if constexpr (is_exact_v<T>) {
    return Rational(binomial(trials, successes)) * ipow(law.p, successes) *
           ipow(Rational(1) - law.p, trials - successes);
  } else {
    const boost::math::binomial_distribution<double> bin(static_cast<double>(trials), law.p);
    return boost::math::pdf(bin, static_cast<double>(successes));
  }
}

template <class T>
std::vector<T> leaf_pmf_table(const LeafLaw<T>& law) {
  const std::uint64_t trials = law.n - 1;
  std::vector<T> table;
  table.reserve(trials + 1);
  if constexpr (is_exact_v<T>) {
    // P(B = j + 1) = P(B = j) (trials - j) / (j + 1) * p / (1 - p).
    const Rational odds = law.p / (Rational(1) - law.p);
    Rational current = ipow(Rational(1) - law.p, trials);
    for (std::uint64_t j = 0; j <= trials; ++j) {
      table.push_back(current);
      current = current * Rational(trials - j) / Rational(j + 1) * odds;
    }
  } else {
    for (std::uint64_t j = 0; j <= trials; ++j) {
      table.push_back(leaf_pmf(law, static_cast<std::int64_t>(j + 3)));
    }
  }
  return table;
}

double leaf_mgf(const LeafLaw<double>& law, double t) {
  return std::pow(1.0 - law.p + law.p * std::exp(t), static_cast<double>(law.n - 1)) *
         std::exp(3.0 * t);
}

double affine_mgf(const LeafLaw<double>& law, double a, double b, double t) {
  return std::pow(1.0 - law.p + law.p * std::exp(a * t), static_cast<double>(law.n - 1)) *
         std::exp((3.0 * a + b) * t);
}

CoeffTriangle::CoeffTriangle(unsigned order) : order_(order) {
  if (order == 0 || order > kMaxOrder) {
    throw std::invalid_argument("CoeffTriangle: order must be in 1.." +
                                std::to_string(kMaxOrder));
  }
  rows_.resize(order + 1);
  rows_[1] = {BigInt(0), BigInt(1)};
  for (unsigned alpha = 2; alpha <= order; ++alpha) {
    auto& row = rows_[alpha];
    const auto& prev = rows_[alpha - 1];
    row.assign(alpha + 1, BigInt(0));
    row[1] = 1;
    row[alpha] = 1;
    for (unsigned i = 2; i < alpha; ++i) {
      row[i] = prev[i - 1] + i * prev[i];
    }
  }
}

const BigInt& CoeffTriangle::operator()(unsigned alpha, unsigned i) const {
  if (alpha == 0 || alpha > order_ || i == 0 || i > alpha) {
    throw std::out_of_range("CoeffTriangle: index (" + std::to_string(alpha) + ", " +
                            std::to_string(i) + ") out of range");
  }
  return rows_[alpha][i];
}

CoeffTriangle coeff_triangle(unsigned order) { return CoeffTriangle(order); }

template <class T>
T leaf_mgf_u_derivative(const LeafLaw<T>& law, unsigned i) {
  const T q = law.p - T(1);
  const T b[4] = {q * q * q, T(3) * q * q, T(3) * q, T(1)};  // b_{-1}, b_0, b_1, b_2
  T sum(0);
  for (int k = -1; k <= 2; ++k) {
    const T base = T(law.n) + T(k);  // n + k >= 0 since n >= 1
    sum += b[k + 1] * falling_factorial(base, i);
  }
  return sum / (law.p * law.p * law.p);
}

template <class T>
T leaf_raw_moment_exact(const LeafLaw<T>& law, unsigned alpha, const CoeffTriangle& triangle) {
  if (alpha == 0) {
    return T(1);
  }
  T total(0);
  T p_power(1);
  for (unsigned i = 1; i <= alpha; ++i) {
    p_power *= law.p;
    T c;
    if constexpr (is_exact_v<T>) {
      c = Rational(triangle(alpha, i));
    } else {
      c = triangle(alpha, i).template convert_to<double>();
    }
    total += c * p_power * leaf_mgf_u_derivative(law, i);
  }
  return total;
}

template <class T>
T leaf_raw_moment_exact(const LeafLaw<T>& law, unsigned alpha) {
  if (alpha == 0) {
    return T(1);
  }
  return leaf_raw_moment_exact(law, alpha, CoeffTriangle(alpha));
}

template <class T>
T leaf_raw_moment_asymptotic(std::uint64_t n, const T& p, unsigned alpha) {
  if (alpha == 0) {
    throw std::invalid_argument("leaf_raw_moment_asymptotic: alpha must be positive");
  }
  const T N(n);
  const T a(alpha);
  return ipow(p, alpha) * ipow(N, alpha) +
         a / T(2) * (a * (T(1) - p) - p + T(5)) * ipow(p, alpha - 1) * ipow(N, alpha - 1);
}

#define SPIDER_INSTANTIATE(T)                                                            \
  template struct LeafLaw<T>;                                                            \
  template T leaf_pmf<T>(const LeafLaw<T>&, std::int64_t);                               \
  template std::vector<T> leaf_pmf_table<T>(const LeafLaw<T>&);                          \
  template T leaf_mgf_u_derivative<T>(const LeafLaw<T>&, unsigned);                      \
  template T leaf_raw_moment_exact<T>(const LeafLaw<T>&, unsigned);                      \
  template T leaf_raw_moment_exact<T>(const LeafLaw<T>&, unsigned, const CoeffTriangle&); \
  template T leaf_raw_moment_asymptotic<T>(std::uint64_t, const T&, unsigned);

SPIDER_INSTANTIATE(double)
SPIDER_INSTANTIATE(Rational)

#undef SPIDER_INSTANTIATE

}  // namespace spider
