#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace spider {

/// One reproducible random stream per (master seed, stream index) pair.
///
/// Backed by std::mt19937_64 seeded through std::seed_seq from all 128 bits
/// of the pair. Uniform and bounded draws are mapped by hand from raw words.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

  /// Uniform on {0, ..., bound - 1}; bound must be positive. Unbiased
  /// (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

/// 64 bits from std::random_device, for runs that were not given a seed.
std::uint64_t entropy_seed();

}  // namespace spider
