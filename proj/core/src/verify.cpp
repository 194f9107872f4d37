#include "spider/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spider/leaf_law.hpp"
#include "spider/oracle.hpp"
#include "spider/rng.hpp"
#include "spider/tree.hpp"

namespace spider {

namespace {

std::string witness(std::uint64_t n, const Rational& p) {
  return "n=" + std::to_string(n) + ", p=" + to_string(p);
}

// Indices checked by the direct-vs-reduced suite.
std::vector<IndexSpec> equivalence_indices() {
  return {
      IndexSpec::leaves(),
      IndexSpec::zagreb(),
      IndexSpec::gordon_scantlebury(),
      IndexSpec::platt(),
      IndexSpec::forgotten(),
      IndexSpec::gini(),
      IndexSpec::hoover(),
      IndexSpec::generalized_zagreb(2.0),
      IndexSpec::generalized_zagreb(3.0),
      IndexSpec::generalized_zagreb(5.0),
      IndexSpec::generalized_zagreb(0.5),
      IndexSpec::generalized_zagreb(-1.5),
      IndexSpec::generic(AffineMap{0.5, 1.25}, 2.0),
      IndexSpec::generic(AffineMap{2.0, -1.0}, -0.75),
  };
}

}  // namespace

bool VerificationReport::passed() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

SuiteResult verify_catalog_against_oracle(const MomentCatalog& catalog,
                                          std::span<const Rational> ps, std::uint64_t n_max) {
  SuiteResult result{"catalog-vs-oracle"};
  for (const auto& entry : catalog.entries()) {
    if (!entry.exact) {
      continue;
    }
    bool mean_flagged = false;
    bool variance_flagged = false;
    for (const auto& p : ps) {
      for (std::uint64_t n = 1; n <= n_max; ++n) {
        const Rational mean = entry.mean_at(n, p);
        const Rational variance = entry.variance_at(n, p);
        const Rational oracle_m = oracle_mean(entry.index, n, p);
        const Rational oracle_v = oracle_variance(entry.index, n, p);
        result.checks += 2;
        if (!mean_flagged && mean != oracle_m) {
          mean_flagged = true;
          result.failures.push_back(entry.index.name() + ": formula " + entry.mean_label +
                                    " disagrees with the oracle at " + witness(n, p) +
                                    " (formula " + to_string(mean) + ", oracle " +
                                    to_string(oracle_m) + ")");
        }
        if (!variance_flagged && variance != oracle_v) {
          variance_flagged = true;
          result.failures.push_back(entry.index.name() + ": formula " + entry.variance_label +
                                    " disagrees with the oracle at " + witness(n, p) +
                                    " (formula " + to_string(variance) + ", oracle " +
                                    to_string(oracle_v) + ")");
        }
      }
    }
  }
  return result;
}

SuiteResult verify_seed_degeneracy(const MomentCatalog& catalog, std::span<const Rational> ps) {
  SuiteResult result{"seed-degeneracy"};
  const TreeState seed = TreeState::seed();
  for (const auto& entry : catalog.entries()) {
    const Rational seed_value = eval_direct_exact(seed, entry.index);
    for (const auto& p : ps) {
      result.checks += 2;
      const Rational variance = entry.variance_at(1, p);
      if (variance != 0) {
        result.failures.push_back(entry.index.name() + ": " + entry.variance_label +
                                  " does not vanish at " + witness(1, p) + " (got " +
                                  to_string(variance) + ")");
      }
      const Rational mean = entry.mean_at(1, p);
      if (entry.exact && mean != seed_value) {
        result.failures.push_back(entry.index.name() + ": " + entry.mean_label + " at " +
                                  witness(1, p) + " is " + to_string(mean) +
                                  ", seed value is " + to_string(seed_value));
      }
    }
  }
  return result;
}

SuiteResult verify_direct_vs_reduced(std::uint64_t trees, std::uint64_t n_max,
                                     std::uint64_t master_seed) {
  SuiteResult result{"direct-vs-reduced"};
  const auto indices = equivalence_indices();
  for (std::uint64_t t = 0; t < trees; ++t) {
    RngStream rng(master_seed, t);
    const std::uint64_t n = 1 + rng.below(n_max);
    const double p = static_cast<double>(1 + rng.below(9)) / 10.0;
    const TreeState tree = grow(GrowthModel::uniform(p), n, rng);
    for (const auto& index : indices) {
      const double direct = eval_direct(tree, index).value;
      const double reduced = eval_reduced(tree.time(), tree.leaf_count(), index).value;
      ++result.checks;
      const double scale = std::max(std::abs(direct), std::abs(reduced));
      if (std::abs(direct - reduced) > 1e-12 * scale) {
        std::ostringstream os;
        os.precision(17);
        os << index.name() << ": direct " << direct << " vs reduced " << reduced << " at n=" << n
           << ", L=" << tree.leaf_count() << " (tree " << t << ")";
        result.failures.push_back(os.str());
      }
      if (index.kind() == IndexKind::Gini || index.kind() == IndexKind::Hoover) {
        ++result.checks;
        if (!(direct >= 0.0 && direct < 1.0)) {
          result.failures.push_back(index.name() + " outside [0, 1) on tree " +
                                    std::to_string(t));
        }
      }
      if (index.has_integer_alpha() || index.kind() == IndexKind::Gini ||
          index.kind() == IndexKind::Hoover || index.kind() == IndexKind::Leaves) {
        ++result.checks;
        const Rational exact_direct = eval_direct_exact(tree, index);
        const Rational exact_reduced = eval_reduced_exact(tree.time(), tree.leaf_count(), index);
        if (exact_direct != exact_reduced) {
          result.failures.push_back(index.name() + ": exact direct " + to_string(exact_direct) +
                                    " vs reduced " + to_string(exact_reduced) + " at n=" +
                                    std::to_string(n) + " (tree " + std::to_string(t) + ")");
        }
      }
    }
  }
  return result;
}

SuiteResult verify_triangle_vs_stirling(unsigned alpha_max) {
  SuiteResult result{"triangle-vs-stirling"};
  const CoeffTriangle triangle(alpha_max);
  for (unsigned a = 1; a <= alpha_max; ++a) {
    for (unsigned i = 1; i <= a; ++i) {
      ++result.checks;
      const BigInt expected = stirling2_explicit(a, i);
      if (triangle(a, i) != expected) {
        result.failures.push_back("C(" + std::to_string(a) + "," + std::to_string(i) +
                                  ") = " + triangle(a, i).str() + ", Stirling " +
                                  expected.str());
      }
    }
  }
  return result;
}

SuiteResult verify_raw_moments(std::span<const Rational> ps, std::uint64_t n_max,
                               unsigned alpha_max) {
  SuiteResult result{"raw-moments-vs-oracle"};
  const CoeffTriangle triangle(alpha_max);
  for (const auto& p : ps) {
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      const LeafLaw<Rational> law(n, p);
      for (unsigned a = 1; a <= alpha_max; ++a) {
        ++result.checks;
        const Rational exact = leaf_raw_moment_exact(law, a, triangle);
        const Rational oracle = oracle_moment(IndexSpec::leaves(), n, p, a);
        if (exact != oracle) {
          result.failures.push_back("E[L^" + std::to_string(a) + "] at " + witness(n, p) +
                                    ": " + to_string(exact) + " vs oracle " + to_string(oracle));
        }
      }
    }
  }
  return result;
}

std::vector<Rational> verification_ps(VerifyLevel level) {
  std::vector<Rational> ps;
  for (int k = 1; k <= 9; ++k) {
    if (level == VerifyLevel::Full || k % 2 == 1) {
      ps.push_back(Rational(k) / Rational(10));
    }
  }
  return ps;
}

VerificationReport run_verification(VerifyLevel level, const MomentCatalog& catalog,
                                    std::uint64_t master_seed) {
  const bool full = level == VerifyLevel::Full;
  const auto ps = verification_ps(level);
  VerificationReport report;
  report.suites.push_back(verify_catalog_against_oracle(catalog, ps, full ? 50 : 20));
  report.suites.push_back(verify_seed_degeneracy(catalog, ps));
  report.suites.push_back(verify_direct_vs_reduced(full ? 10'000 : 1'000, 500, master_seed));
  report.suites.push_back(verify_triangle_vs_stirling(20));
  report.suites.push_back(verify_raw_moments(ps, full ? 60 : 20, 6));
  return report;
}

}  // namespace spider
