#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spider/indices.hpp"
#include "spider/tree.hpp"

namespace spider {

/// Invalid experiment configuration; `field()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SimConfig {
  GrowthModel model = GrowthModel::uniform(0.5);
  std::uint64_t n = 1;
  std::uint64_t replicates = 1;
  std::uint64_t master_seed = 0;
  std::vector<IndexSpec> indices;
  /// Free shift k in the CLT scale sqrt(... (n + k)^e).
  double clt_shift = 0.0;
  /// Keep standardized samples and report a KS distance for every index
  /// that has a CLT normalizer.
  bool ks = false;
  /// Worker threads; 0 picks the hardware concurrency. Never affects results.
  unsigned threads = 0;

  /// Throws ConfigError naming the first bad field.
  void validate() const;
};

/// Most standardized samples kept per index; beyond this, replicates are
/// thinned by a fixed stride.
inline constexpr std::uint64_t kMaxRetainedSamples = 1'000'000;

struct IndexSummary {
  IndexSpec index;
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> ks;
  std::vector<double> standardized;
};

struct SampleSummary {
  std::vector<IndexSummary> indices;
  /// Replicates whose reduced values were re-checked against eval_direct.
  std::uint64_t direct_checks = 0;

  /// Throws std::out_of_range if the index was not requested.
  const IndexSummary& at(const IndexSpec& index) const;
};

/// Grows config.replicates independent trees to time config.n, replicate r
/// using RngStream(master_seed, r), and summarizes every requested index.
/// Every 100th replicate is also evaluated with eval_direct; a disagreement
/// raises std::runtime_error. Results depend only on the config.
SampleSummary run_experiment(const SimConfig& config);

/// (x - center(n, p)) / scale(n, p, k) with the index's CLT normalizer.
/// Throws UnknownCatalogEntry if the index has none.
std::vector<double> standardize(std::span<const double> samples, const IndexSpec& index,
                                std::uint64_t n, double p, double k);

struct ProbeConfig {
  GrowthModel model = GrowthModel::uniform(0.5);
  IndexSpec index = IndexSpec::gini();
  std::vector<std::uint64_t> n_grid;
  double epsilon = 0.05;
  double r = 2.0;
  std::uint64_t replicates = 1000;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;

  void validate() const;
};

struct ProbeRow {
  std::uint64_t n;
  double limit;
  /// Moments of the scaled index value / n^e.
  double mean;
  double variance;
  /// Fraction of replicates with |scaled - limit| > epsilon.
  double exceedance;
  /// Empirical E|scaled - limit|^r.
  double r_mean_error;
  /// Chebyshev bound (V + (E - limit n^e)^2) / (n^2e epsilon^2) from the
  /// catalog moments.
  double chebyshev_bound;
};

/// Each replicate grows once to max(n_grid) and is read at every grid point.
/// Throws UnknownCatalogEntry for indices without a limit constant.
std::vector<ProbeRow> convergence_probe(const ProbeConfig& config);

}  // namespace spider
