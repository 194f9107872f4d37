#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spider/numeric.hpp"

namespace spider::testing {

// Explicit edge list for a spider with the given leg lengths. Node 0 is the
// centroid; every leg is a path hanging off it.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> spider_edges(
    const std::vector<std::uint64_t>& legs) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::uint64_t next = 1;
  for (auto len : legs) {
    std::uint64_t prev = 0;
    for (std::uint64_t j = 0; j < len; ++j) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return edges;
}

inline std::vector<std::uint64_t> node_degrees(const std::vector<std::uint64_t>& legs) {
  const auto edges = spider_edges(legs);
  std::vector<std::uint64_t> deg(edges.size() + 1, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

inline Rational brute_power_sum(const std::vector<std::uint64_t>& legs, unsigned alpha) {
  Rational total = 0;
  for (auto d : node_degrees(legs)) {
    total += ipow(Rational(d), alpha);
  }
  return total;
}

inline Rational brute_platt(const std::vector<std::uint64_t>& legs) {
  const auto deg = node_degrees(legs);
  Rational total = 0;
  for (const auto& [u, v] : spider_edges(legs)) {
    total += Rational(deg[u] + deg[v]) - 2;
  }
  return total;
}

// Unordered pairs; denominator N^2 * mean degree.
inline Rational brute_gini(const std::vector<std::uint64_t>& legs) {
  const auto deg = node_degrees(legs);
  const auto nodes = static_cast<std::int64_t>(deg.size());
  Rational pair_sum = 0;
  std::int64_t degree_sum = 0;
  for (std::int64_t i = 0; i < nodes; ++i) {
    degree_sum += static_cast<std::int64_t>(deg[i]);
    for (std::int64_t j = i + 1; j < nodes; ++j) {
      const auto diff = static_cast<std::int64_t>(deg[i]) - static_cast<std::int64_t>(deg[j]);
      pair_sum += diff < 0 ? -diff : diff;
    }
  }
  const Rational mean_degree = Rational(degree_sum) / nodes;
  return pair_sum / (Rational(nodes * nodes) * mean_degree);
}

inline Rational brute_hoover(const std::vector<std::uint64_t>& legs) {
  const auto deg = node_degrees(legs);
  const auto nodes = static_cast<std::int64_t>(deg.size());
  std::int64_t degree_sum = 0;
  for (auto d : deg) {
    degree_sum += static_cast<std::int64_t>(d);
  }
  Rational total = 0;
  for (auto d : deg) {
    const auto dev = nodes * static_cast<std::int64_t>(d) - degree_sum;
    total += dev < 0 ? -dev : dev;
  }
  return total / (Rational(2) * nodes * degree_sum);
}

}  // namespace spider::testing
