#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spider/rng.hpp"
#include "spider/tree.hpp"
#include "support.hpp"

using namespace spider;

TEST_CASE("seed tree is a centroid with three leaves") {
  const TreeState s = TreeState::seed();
  CHECK(s.time() == 1);
  CHECK(s.legs() == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(s.leaf_count() == 3);
  CHECK(s.node_count() == 4);
  CHECK(s.internal_count() == 0);
}

TEST_CASE("tree state rejects broken invariants") {
  CHECK_THROWS_AS(TreeState(0, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TreeState(1, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TreeState(2, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TreeState(1, {0, 2, 1}), std::invalid_argument);
  CHECK_NOTHROW(TreeState(4, {1, 1, 1, 1, 2}));
}

TEST_CASE("forced steps from the seed") {
  TreeState a = TreeState::seed();
  a.recruit_at_centroid();
  CHECK(a == TreeState(2, {1, 1, 1, 1}));

  TreeState b = TreeState::seed();
  b.recruit_at_leaf(0);
  CHECK(b == TreeState(2, {2, 1, 1}));
}

TEST_CASE("growth model validation") {
  CHECK_THROWS_AS(GrowthModel::uniform(0.0), InvalidProbability);
  CHECK_THROWS_AS(GrowthModel::uniform(1.0), InvalidProbability);
  CHECK_THROWS_AS(GrowthModel::uniform(-0.2), InvalidProbability);
  CHECK_THROWS_AS(GrowthModel::uniform(std::nan("")), InvalidProbability);
  CHECK(GrowthModel::parse("uniform:0.3").p() == doctest::Approx(0.3));
  CHECK(GrowthModel::parse("preferential").is_preferential());
  CHECK(GrowthModel::parse("preferential").p() == 0.5);
  CHECK(GrowthModel::parse("uniform:3/10").name() == "uniform:0.3");
  CHECK_THROWS_AS(GrowthModel::parse("uniform:1"), std::invalid_argument);
  CHECK_THROWS_AS(GrowthModel::parse("barabasi"), std::invalid_argument);
}

TEST_CASE("preferential rule picks the centroid with probability one half") {
  RngStream rng(11, 0);
  const GrowthModel uniform = GrowthModel::uniform(0.3);
  TreeState s = TreeState::seed();
  for (int i = 0; i < 200; ++i) {
    const SelectionWeights w = selection_weights(s, GrowthModel::preferential());
    const double leaves = std::accumulate(w.leaves.begin(), w.leaves.end(), 0.0);
    const double L = static_cast<double>(s.leaf_count());
    CHECK(w.centroid == 0.5);
    CHECK(w.leaves.size() == s.leaf_count());
    CHECK(leaves == doctest::Approx(0.5).epsilon(1e-12));
    for (double x : w.leaves) {
      CHECK(x == doctest::Approx(1.0 / (2 * L)).epsilon(1e-15));
    }
    advance(s, uniform, rng);
  }
}

TEST_CASE("grow to n = 1 returns the seed and n = 0 is rejected") {
  RngStream rng(5, 9);
  CHECK(grow(GrowthModel::uniform(0.5), 1, rng) == TreeState::seed());
  CHECK_THROWS_AS(grow(GrowthModel::uniform(0.5), 0, rng), std::invalid_argument);
}

TEST_CASE("per-step invariants hold along random paths") {
  for (double p : {0.1, 0.5, 0.9}) {
    const GrowthModel model = GrowthModel::uniform(p);
    for (std::uint64_t stream = 0; stream < 20; ++stream) {
      RngStream rng(2024, stream);
      TreeState s = TreeState::seed();
      for (int k = 1; k <= 300; ++k) {
        const auto before = s.leaf_count();
        const TreeState next = step(s, model, rng);
        CHECK(next.time() == s.time() + 1);
        const auto sum = std::accumulate(next.legs().begin(), next.legs().end(), std::uint64_t{0});
        CHECK(sum == next.time() + 2);
        const bool centroid = next.legs().size() == s.legs().size() + 1;
        CHECK((next.leaf_count() == before || (centroid && next.leaf_count() == before + 1)));
        if (centroid) {
          CHECK(next.legs().back() == 1);
        }
        s = next;
      }
      CHECK(s.time() == 301);
    }
  }
}

TEST_CASE("grow is reproducible from (seed, stream)") {
  const GrowthModel model = GrowthModel::uniform(0.37);
  RngStream a(77, 3);
  RngStream b(77, 3);
  RngStream c(77, 4);
  const TreeState ta = grow(model, 2000, a);
  CHECK(ta == grow(model, 2000, b));
  CHECK_FALSE(ta == grow(model, 2000, c));
}

TEST_CASE("preferential growth follows the same path as uniform one half") {
  for (std::uint64_t stream = 0; stream < 50; ++stream) {
    RngStream a(99, stream);
    RngStream b(99, stream);
    CHECK(grow(GrowthModel::preferential(), 400, a) == grow(GrowthModel::uniform(0.5), 400, b));
  }
}

TEST_CASE("mean leaf count at n = 101, p = 0.3") {
  const GrowthModel model = GrowthModel::uniform(0.3);
  const std::uint64_t reps = 20000;
  double sum = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    RngStream rng(314, r);
    sum += static_cast<double>(grow(model, 101, rng).leaf_count());
  }
  const double se = std::sqrt(100 * 0.3 * 0.7 / reps);
  CHECK(std::abs(sum / reps - 33.0) < 4 * se);
}

TEST_CASE("one-step centroid frequency matches the model") {
  const std::uint64_t reps = 100000;
  for (const GrowthModel& model :
       {GrowthModel::uniform(0.2), GrowthModel::uniform(0.75), GrowthModel::preferential()}) {
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
      RngStream rng(8, r);
      const TreeState s = step(TreeState(3, {2, 1, 2}), model, rng);
      hits += s.leaf_count() == 4 ? 1 : 0;
    }
    const double p = model.p();
    CHECK(std::abs(static_cast<double>(hits) / reps - p) < 4 * std::sqrt(p * (1 - p) / reps));
  }
}

TEST_CASE("degree multiset") {
  CHECK(degree_multiset(TreeState::seed()) == DegreeCounts{{1, 3}, {3, 1}});
  CHECK(degree_multiset(TreeState(4, {1, 1, 1, 1, 2})) == DegreeCounts{{1, 5}, {2, 1}, {5, 1}});

  const GrowthModel model = GrowthModel::uniform(0.4);
  for (std::uint64_t stream = 0; stream < 200; ++stream) {
    RngStream rng(1, stream);
    const TreeState s = grow(model, 1 + rng.below(120), rng);
    const DegreeCounts counts = degree_multiset(s);
    std::uint64_t nodes = 0;
    std::uint64_t degree_sum = 0;
    for (const auto& [d, c] : counts) {
      nodes += c;
      degree_sum += d * c;
    }
    CHECK(nodes == s.time() + 3);
    CHECK(degree_sum == 2 * (s.time() + 2));

    DegreeCounts brute;
    for (auto d : spider::testing::node_degrees(s.legs())) {
      ++brute[d];
    }
    CHECK(counts == brute);
  }
}

TEST_CASE("rng stream helpers") {
  RngStream rng(1, 2);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(rng.below(7) < 7);
  }
  CHECK(rng.master_seed() == 1);
  CHECK(rng.stream_index() == 2);
  CHECK(RngStream(5, 0)() != RngStream(5, 1)());
  CHECK(RngStream(5, 0)() != RngStream(6, 0)());
}
