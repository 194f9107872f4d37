#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace spider {

double normal_cdf(double x);

class UndersizedSample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of
/// `samples` and the standard normal CDF:
///   D = max_i max(i/m - Phi(x_(i)), Phi(x_(i)) - (i-1)/m).
/// Throws UndersizedSample below 10 samples.
double ks_normal(std::span<const double> samples);

/// Single-pass mean/variance (Welford), mergeable with Chan's update.
class RunningMoments {
 public:
  void add(double x) noexcept;
  void merge(const RunningMoments& other) noexcept;

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; zero for fewer than two samples.
  double variance() const noexcept;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace spider
