#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "spider/numeric.hpp"
#include "spider/tree.hpp"

namespace spider {

enum class IndexKind {
  Leaves,             // L_n, the number of leaves
  GeneralizedZagreb,  // sum of deg^alpha
  Zagreb,             // sum of deg^2
  GordonScantlebury,  // number of length-2 paths, Z/2 - |E|
  Platt,              // sum over edges of (deg u + deg v - 2)
  Forgotten,          // sum of deg^3
  Gini,               // degree-based Gini
  Hoover,             // degree-based Hoover
  Generic,            // sum of h(deg)^alpha
};

struct IdentityMap {
  friend bool operator==(const IdentityMap&, const IdentityMap&) = default;
};
struct AffineMap {
  double a;
  double b;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};
/// h given pointwise on the degrees that can occur.
struct TabulatedMap {
  std::map<std::uint64_t, double> values;
  friend bool operator==(const TabulatedMap&, const TabulatedMap&) = default;
};
using DegreeTransform = std::variant<IdentityMap, AffineMap, TabulatedMap>;

/// Raised when an index cannot be evaluated on a given input (h not positive
/// on an occurring degree, non-integer alpha in exact mode, (n, L) outside
/// the reachable range).
class IndexDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Which index to compute. Everything except Gini, Hoover and Leaves is a
/// member of the family sum_v h(deg v)^alpha.
class IndexSpec {
 public:
  static IndexSpec leaves() { return IndexSpec(IndexKind::Leaves, 1.0); }
  static IndexSpec zagreb() { return IndexSpec(IndexKind::Zagreb, 2.0); }
  static IndexSpec gordon_scantlebury() { return IndexSpec(IndexKind::GordonScantlebury, 2.0); }
  static IndexSpec platt() { return IndexSpec(IndexKind::Platt, 2.0); }
  static IndexSpec forgotten() { return IndexSpec(IndexKind::Forgotten, 3.0); }
  static IndexSpec gini() { return IndexSpec(IndexKind::Gini, 1.0); }
  static IndexSpec hoover() { return IndexSpec(IndexKind::Hoover, 1.0); }
  /// alpha must be finite and nonzero.
  static IndexSpec generalized_zagreb(double alpha);
  static IndexSpec generic(DegreeTransform h, double alpha);

  /// Accepts leaves, zagreb, gordon_scantlebury, platt, forgotten, gini,
  /// hoover and generalized_zagreb:<alpha>.
  static IndexSpec parse(std::string_view name);

  IndexKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  const DegreeTransform& transform() const noexcept { return h_; }

  /// Canonical name; parse(name()) round-trips for every parseable kind.
  std::string name() const;

  /// True when alpha is a positive integer (required by exact arithmetic).
  bool has_integer_alpha() const noexcept;

  friend bool operator==(const IndexSpec&, const IndexSpec&) = default;

 private:
  IndexSpec(IndexKind kind, double alpha, DegreeTransform h = IdentityMap{})
      : kind_(kind), alpha_(alpha), h_(std::move(h)) {}

  IndexKind kind_;
  double alpha_;
  DegreeTransform h_;
};

struct IndexValue {
  double value;
  IndexSpec index;
  std::uint64_t time;
};

/// Definition-level evaluation: reads degrees (and, for Platt, edges) off the
/// tree itself. Gini sums |deg_i - deg_j| over unordered node pairs and
/// divides by N^2 times the mean degree; Hoover sums |N deg_i - sum deg| and
/// divides by 2 N sum deg, where N is the node count.
IndexValue eval_direct(const TreeState& state, const IndexSpec& index);
Rational eval_direct_exact(const TreeState& state, const IndexSpec& index);

/// Closed form in (n, L) alone. Requires 3 <= L <= n + 2.
IndexValue eval_reduced(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index);
Rational eval_reduced_exact(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index);

/// Same as eval_reduced(...).value without building an IndexValue; the
/// Monte Carlo inner loop uses this.
double reduced_value(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index);

}  // namespace spider
