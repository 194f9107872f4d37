#pragma once

#include <cstdint>
#include <vector>

#include "spider/numeric.hpp"

namespace spider {

/// Law of the leaf count L_n = 3 + Binomial(n - 1, p). T is double or
/// Rational; with Rational every quantity below is computed exactly.
template <class T>
struct LeafLaw {
  std::uint64_t n;
  T p;

  /// Throws std::invalid_argument unless n >= 1 and 0 < p < 1.
  LeafLaw(std::uint64_t n_, T p_);

  std::uint64_t support_min() const noexcept { return 3; }
  std::uint64_t support_max() const noexcept { return n + 2; }
};

/// P(L_n = k); zero outside {3, ..., n + 2}.
template <class T>
T leaf_pmf(const LeafLaw<T>& law, std::int64_t k);

/// The full PMF, entry j holding P(L_n = j + 3).
template <class T>
std::vector<T> leaf_pmf_table(const LeafLaw<T>& law);

/// E[exp(t L_n)] = (1 - p + p e^t)^(n-1) e^(3t).
double leaf_mgf(const LeafLaw<double>& law, double t);

/// MGF of a L_n + b.
double affine_mgf(const LeafLaw<double>& law, double a, double b, double t);

/// The triangle C(alpha, i) linking t-derivatives of the leaf MGF to its
/// derivatives in u = 1 - p + p e^t:
///   C(alpha, 1) = C(alpha, alpha) = 1,
///   C(alpha, i) = C(alpha - 1, i - 1) + i C(alpha - 1, i).
class CoeffTriangle {
 public:
  static constexpr unsigned kMaxOrder = 30;

  /// Builds rows 1..order. Throws std::invalid_argument for order 0 or
  /// order > kMaxOrder.
  explicit CoeffTriangle(unsigned order);

  unsigned order() const noexcept { return order_; }
  /// 1 <= i <= alpha <= order().
  const BigInt& operator()(unsigned alpha, unsigned i) const;

 private:
  unsigned order_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[alpha][i], index 0 unused
};

CoeffTriangle coeff_triangle(unsigned order);

/// alpha-th derivative in u of the leaf MGF, evaluated at u = 1 (t = 0):
/// p^-3 sum_{k=-1}^{2} b_k (n+k)(n+k-1)...(n+k-i+1) with
/// b_{-1} = (p-1)^3, b_0 = 3(p-1)^2, b_1 = 3(p-1), b_2 = 1.
template <class T>
T leaf_mgf_u_derivative(const LeafLaw<T>& law, unsigned i);

/// E[L_n^alpha] = sum_i C(alpha, i) p^i d^i M/du^i (1).
template <class T>
T leaf_raw_moment_exact(const LeafLaw<T>& law, unsigned alpha);
template <class T>
T leaf_raw_moment_exact(const LeafLaw<T>& law, unsigned alpha, const CoeffTriangle& triangle);

/// Two-term large-n expansion of E[L_n^alpha]:
///   p^a n^a + (a/2)(a(1-p) - p + 5) p^(a-1) n^(a-1).
template <class T>
T leaf_raw_moment_asymptotic(std::uint64_t n, const T& p, unsigned alpha);

}  // namespace spider
