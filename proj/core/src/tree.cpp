#include "spider/tree.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "spider/numeric.hpp"

namespace spider {

namespace {

std::string probability_message(double p) {
  std::ostringstream os;
  os << "recruitment probability p must satisfy 0 < p < 1, got " << p;
  return os.str();
}

}  // namespace

InvalidProbability::InvalidProbability(double p) : std::invalid_argument(probability_message(p)) {}

TreeState TreeState::seed() {
  TreeState s;
  s.time_ = 1;
  s.legs_ = {1, 1, 1};
  return s;
}

TreeState::TreeState(std::uint64_t time, std::vector<std::uint64_t> legs)
    : time_(time), legs_(std::move(legs)) {
  if (time_ == 0) {
    throw std::invalid_argument("TreeState: time must be positive");
  }
  if (legs_.size() < 3) {
    throw std::invalid_argument("TreeState: a spider tree has at least 3 legs");
  }
  std::uint64_t total = 0;
  for (auto len : legs_) {
    if (len == 0) {
      throw std::invalid_argument("TreeState: leg lengths must be positive");
    }
    total += len;
  }
  if (total != time_ + 2) {
    throw std::invalid_argument("TreeState: legs must hold time + 2 nodes");
  }
}

void TreeState::recruit_at_centroid() {
  legs_.push_back(1);
  ++time_;
}

void TreeState::recruit_at_leaf(std::size_t leg) {
  legs_.at(leg) += 1;
  ++time_;
}

GrowthModel GrowthModel::uniform(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidProbability(p);
  }
  return GrowthModel(UniformLeaf{p});
}

GrowthModel GrowthModel::preferential() { return GrowthModel(Preferential{}); }

GrowthModel GrowthModel::parse(const std::string& text) {
  if (text == "preferential") {
    return preferential();
  }
  const std::string prefix = "uniform:";
  if (text.rfind(prefix, 0) == 0) {
    double p = 0.0;
    try {
      p = to_double(parse_rational(text.substr(prefix.size())));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("model: cannot parse probability in '" + text + "'");
    }
    return uniform(p);
  }
  throw std::invalid_argument("model: expected 'uniform:<p>' or 'preferential', got '" + text + "'");
}

UniformLeaf GrowthModel::effective() const noexcept {
  if (const auto* u = std::get_if<UniformLeaf>(&variant_)) {
    return *u;
  }
  return UniformLeaf{0.5};
}

std::string GrowthModel::name() const {
  if (is_preferential()) {
    return "preferential";
  }
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, effective().p).ptr;
  return "uniform:" + std::string(buf, end);
}

SelectionWeights selection_weights(const TreeState& state, const GrowthModel& model) {
  const auto leaves = static_cast<double>(state.leaf_count());
  SelectionWeights w;
  if (const auto* u = std::get_if<UniformLeaf>(&model.variant())) {
    w.centroid = u->p;
    w.leaves.assign(state.leaf_count(), (1.0 - u->p) / leaves);
    return w;
  }
  // Qualified nodes are the centroid (degree L) and the L leaves (degree 1).
  const double total_degree = leaves + leaves * 1.0;
  w.centroid = leaves / total_degree;
  w.leaves.assign(state.leaf_count(), 1.0 / total_degree);
  return w;
}

void advance(TreeState& state, const GrowthModel& model, RngStream& rng) {
  const double p = model.p();
  if (rng.uniform() < p) {
    state.recruit_at_centroid();
  } else {
    state.recruit_at_leaf(static_cast<std::size_t>(rng.below(state.leaf_count())));
  }
}

TreeState step(TreeState state, const GrowthModel& model, RngStream& rng) {
  advance(state, model, rng);
  return state;
}

TreeState grow(const GrowthModel& model, std::uint64_t horizon_n, RngStream& rng) {
  if (horizon_n == 0) {
    throw std::invalid_argument("grow: horizon n must be at least 1");
  }
  TreeState state = TreeState::seed();
  for (std::uint64_t t = 1; t < horizon_n; ++t) {
    advance(state, model, rng);
  }
  return state;
}

DegreeCounts degree_multiset(const TreeState& state) {
  // Read off the legs: each contributes one leaf and len - 1 internal nodes.
  std::uint64_t internal = 0;
  for (auto len : state.legs()) {
    internal += len - 1;
  }
  DegreeCounts counts;
  counts[state.legs().size()] += 1;
  counts[1] += state.legs().size();
  if (internal > 0) {
    counts[2] += internal;
  }
  return counts;
}

}  // namespace spider
