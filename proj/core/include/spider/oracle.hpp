#pragma once

#include <cstdint>

#include "spider/indices.hpp"
#include "spider/leaf_law.hpp"

namespace spider {

/// E[X^order] for an index X that is a function of (n, L_n), summed term by
/// term over the support of L_n with leaf_pmf weights. Shares nothing with
/// the closed forms in the catalog beyond the reduced index value itself,
/// which makes it the reference those closed forms are checked against.
template <class T>
T oracle_moment(const IndexSpec& index, std::uint64_t n, const T& p, unsigned order);

template <class T>
T oracle_mean(const IndexSpec& index, std::uint64_t n, const T& p) {
  return oracle_moment(index, n, p, 1);
}

/// Central second moment by direct summation of (x - mean)^2.
template <class T>
T oracle_variance(const IndexSpec& index, std::uint64_t n, const T& p);

/// Stirling numbers of the second kind from the inclusion-exclusion sum
///   S(a, i) = (1/i!) sum_j (-1)^j C(i, j) (i - j)^a,
/// which does not use the triangle recurrence.
BigInt stirling2_explicit(unsigned a, unsigned i);

}  // namespace spider
