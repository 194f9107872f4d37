#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spider/catalog.hpp"
#include "spider/numeric.hpp"

namespace spider {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
};

struct VerificationReport {
  std::vector<SuiteResult> suites;

  bool passed() const noexcept;
};

enum class VerifyLevel { Quick, Full };

/// Exact comparison of every exact catalog mean and variance with the
/// binomial-summation oracle over ps x {1..n_max}. The oracle is taken as
/// authoritative: each disagreeing formula is reported once, by label, with
/// the first (n, p) witness.
SuiteResult verify_catalog_against_oracle(const MomentCatalog& catalog,
                                          std::span<const Rational> ps, std::uint64_t n_max);

/// Variances vanish at n = 1 and means equal the seed tree's index values.
SuiteResult verify_seed_degeneracy(const MomentCatalog& catalog, std::span<const Rational> ps);

/// eval_direct against eval_reduced on randomly grown trees: within 1e-12
/// relative in binary64 and exactly in rational arithmetic.
SuiteResult verify_direct_vs_reduced(std::uint64_t trees, std::uint64_t n_max,
                                     std::uint64_t master_seed);

/// Coefficient triangle against independently computed Stirling numbers.
SuiteResult verify_triangle_vs_stirling(unsigned alpha_max);

/// leaf_raw_moment_exact against the oracle, exactly, for alpha <= alpha_max.
SuiteResult verify_raw_moments(std::span<const Rational> ps, std::uint64_t n_max,
                               unsigned alpha_max);

/// The p grid used by a verification level: {1/10, ..., 9/10} for Full and
/// {1/10, 3/10, 1/2, 7/10, 9/10} for Quick.
std::vector<Rational> verification_ps(VerifyLevel level);

VerificationReport run_verification(VerifyLevel level, const MomentCatalog& catalog,
                                    std::uint64_t master_seed = 20240601);

}  // namespace spider
