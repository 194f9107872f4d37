#include "spider/oracle.hpp"

#include <vector>

namespace spider {

namespace {

template <class T>
T value_at(const IndexSpec& index, std::uint64_t n, std::uint64_t leaves) {
  if constexpr (is_exact_v<T>) {
    return eval_reduced_exact(n, leaves, index);
  } else {
    return reduced_value(n, leaves, index);
  }
}

}  // namespace

template <class T>
T oracle_moment(const IndexSpec& index, std::uint64_t n, const T& p, unsigned order) {
  const LeafLaw<T> law(n, p);
  const std::vector<T> pmf = leaf_pmf_table(law);
  T total(0);
  for (std::size_t j = 0; j < pmf.size(); ++j) {
    total += pmf[j] * ipow(value_at<T>(index, n, j + 3), order);
  }
  return total;
}

template <class T>
T oracle_variance(const IndexSpec& index, std::uint64_t n, const T& p) {
  const LeafLaw<T> law(n, p);
  const std::vector<T> pmf = leaf_pmf_table(law);
  std::vector<T> values;
  values.reserve(pmf.size());
  T mean(0);
  for (std::size_t j = 0; j < pmf.size(); ++j) {
    values.push_back(value_at<T>(index, n, j + 3));
    mean += pmf[j] * values.back();
  }
  T total(0);
  for (std::size_t j = 0; j < pmf.size(); ++j) {
    const T d = values[j] - mean;
    total += pmf[j] * d * d;
  }
  return total;
}

template double oracle_moment<double>(const IndexSpec&, std::uint64_t, const double&, unsigned);
template Rational oracle_moment<Rational>(const IndexSpec&, std::uint64_t, const Rational&,
                                          unsigned);
template double oracle_variance<double>(const IndexSpec&, std::uint64_t, const double&);
template Rational oracle_variance<Rational>(const IndexSpec&, std::uint64_t, const Rational&);

BigInt stirling2_explicit(unsigned a, unsigned i) {
  if (i == 0) {
    return BigInt(a == 0 ? 1 : 0);
  }
  BigInt sum(0);
  for (unsigned j = 0; j <= i; ++j) {
    BigInt term = binomial(i, j) * ipow(BigInt(i - j), a);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  BigInt factorial(1);
  for (unsigned k = 2; k <= i; ++k) {
    factorial *= k;
  }
  return sum / factorial;
}

}  // namespace spider
