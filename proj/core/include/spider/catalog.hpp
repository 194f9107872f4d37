#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spider/indices.hpp"
#include "spider/polynomial.hpp"

namespace spider {

class UnknownCatalogEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// value / n^scaling_exponent converges to value(p).
struct LimitConstant {
  Bivariate value;  // polynomial in p only
  double scaling_exponent;
};

/// (X - center(n, p)) / scale(n, p, k) with
/// scale = factor * sqrt(scale_p(p) * (n + k)^n_power).
struct CltNormalizer {
  Bivariate center;
  Rational factor;
  Bivariate scale_p;
  unsigned n_power;

  double center_at(double n, double p) const;
  /// Throws std::invalid_argument unless n + k > 0.
  double scale_at(double n, double p, double k) const;
};

struct MomentCatalogEntry {
  IndexSpec index;
  /// Names of the two formulas, used when a verification run flags one.
  std::string mean_label;
  std::string variance_label;
  RationalFunction mean;
  RationalFunction variance;
  /// False for the large-n expansions of the generalized Zagreb index, whose
  /// mean keeps two terms and whose variance keeps only the leading term.
  bool exact = true;
  std::optional<LimitConstant> limit;
  std::optional<CltNormalizer> clt;

  template <class T>
  T mean_at(std::uint64_t n, const T& p) const {
    return mean.eval(T(n), p);
  }
  template <class T>
  T variance_at(std::uint64_t n, const T& p) const {
    return variance.eval(T(n), p);
  }
  std::optional<double> limit_at(double p) const;
};

/// A set of catalog entries keyed by index. standard() holds the transcribed
/// closed forms; copies can be modified to exercise the verifier.
class MomentCatalog {
 public:
  static const MomentCatalog& standard();

  /// Throws UnknownCatalogEntry for indices without closed forms.
  /// generalized_zagreb:<alpha> is resolved on demand for integer alpha >= 1.
  MomentCatalogEntry entry(const IndexSpec& index) const;

  const std::vector<MomentCatalogEntry>& entries() const noexcept { return entries_; }

  /// Replaces the entry with the same index (or appends).
  void put(MomentCatalogEntry entry);

 private:
  std::vector<MomentCatalogEntry> entries_;
};

MomentCatalogEntry moment_catalog(const IndexSpec& index);

}  // namespace spider
