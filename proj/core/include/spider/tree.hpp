#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spider/rng.hpp"

namespace spider {

/// Raised for a recruitment probability outside the open interval (0, 1).
class InvalidProbability : public std::invalid_argument {
 public:
  explicit InvalidProbability(double p);
};

/// A spider tree at time n, stored as the lengths of its legs. Each leg is a
/// path hanging off the centroid and ending in exactly one leaf, so the leg
/// lengths determine the tree up to isomorphism.
///
/// Invariants: at least three legs, every leg has length >= 1, and the legs
/// hold n + 2 nodes in total (n + 3 nodes with the centroid).
class TreeState {
 public:
  /// The time-1 seed: a centroid with three leaves.
  static TreeState seed();

  /// Validates the invariants above; throws std::invalid_argument otherwise.
  TreeState(std::uint64_t time, std::vector<std::uint64_t> legs);

  std::uint64_t time() const noexcept { return time_; }
  const std::vector<std::uint64_t>& legs() const noexcept { return legs_; }

  std::uint64_t leaf_count() const noexcept { return legs_.size(); }
  std::uint64_t internal_count() const noexcept { return time_ + 2 - legs_.size(); }
  std::uint64_t node_count() const noexcept { return time_ + 3; }
  std::uint64_t edge_count() const noexcept { return time_ + 2; }

  /// Centroid recruits: a new leg of length one.
  void recruit_at_centroid();
  /// The leaf at the end of `leg` recruits and becomes internal.
  void recruit_at_leaf(std::size_t leg);

  friend bool operator==(const TreeState&, const TreeState&) = default;

 private:
  TreeState() = default;

  std::uint64_t time_ = 1;
  std::vector<std::uint64_t> legs_;
};

struct UniformLeaf {
  double p;
};

struct Preferential {};

/// Recruitment rule. Under UniformLeaf(p) the centroid recruits with
/// probability p and each leaf with (1 - p) / L. Under Preferential every
/// qualified node recruits with probability proportional to its degree.
class GrowthModel {
 public:
  using Variant = std::variant<UniformLeaf, Preferential>;

  /// Throws InvalidProbability unless 0 < p < 1.
  static GrowthModel uniform(double p);
  static GrowthModel preferential();

  /// "uniform:<p>" or "preferential".
  static GrowthModel parse(const std::string& text);

  const Variant& variant() const noexcept { return variant_; }
  bool is_preferential() const noexcept { return std::holds_alternative<Preferential>(variant_); }

  /// The uniform-leaf model this rule reduces to. Preferential attachment on a
  /// spider tree weights the centroid by L and every leaf by 1, so the
  /// centroid always recruits with probability L / 2L = 1/2.
  UniformLeaf effective() const noexcept;

  /// Centroid probability in the reduced model.
  double p() const noexcept { return effective().p; }

  std::string name() const;

 private:
  explicit GrowthModel(Variant v) : variant_(v) {}
  Variant variant_;
};

/// Recruitment probabilities of every qualified node in `state`, computed
/// from the model's own definition (no reduction applied).
struct SelectionWeights {
  double centroid;
  std::vector<double> leaves;  // one entry per leg
};
SelectionWeights selection_weights(const TreeState& state, const GrowthModel& model);

/// One atomic growth step: one recruiter is drawn against the state at the
/// start of the step, then time advances by one.
void advance(TreeState& state, const GrowthModel& model, RngStream& rng);

TreeState step(TreeState state, const GrowthModel& model, RngStream& rng);

/// Applies horizon_n - 1 steps to the seed. Throws std::invalid_argument for
/// horizon_n == 0.
TreeState grow(const GrowthModel& model, std::uint64_t horizon_n, RngStream& rng);

/// Degree -> number of nodes with that degree.
using DegreeCounts = std::map<std::uint64_t, std::uint64_t>;
DegreeCounts degree_multiset(const TreeState& state);

}  // namespace spider
