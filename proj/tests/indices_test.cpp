#include <doctest.h>

#include <cmath>

#include "spider/indices.hpp"
#include "spider/rng.hpp"
#include "spider/tree.hpp"
#include "support.hpp"

using namespace spider;
namespace st = spider::testing;

namespace {

const std::vector<std::uint64_t> kSeedLegs{1, 1, 1};

std::vector<IndexSpec> named_indices() {
  return {IndexSpec::leaves(),   IndexSpec::zagreb(),
          IndexSpec::gordon_scantlebury(), IndexSpec::platt(),
          IndexSpec::forgotten(), IndexSpec::gini(),
          IndexSpec::hoover(),   IndexSpec::generalized_zagreb(4),
          IndexSpec::generalized_zagreb(0.5), IndexSpec::generalized_zagreb(-1.5)};
}

}  // namespace

TEST_CASE("seed values by direct evaluation") {
  const TreeState seed = TreeState::seed();
  CHECK(eval_direct(seed, IndexSpec::zagreb()).value == 12.0);
  CHECK(eval_direct(seed, IndexSpec::forgotten()).value == 30.0);
  CHECK(eval_direct(seed, IndexSpec::gordon_scantlebury()).value == 3.0);
  CHECK(eval_direct(seed, IndexSpec::platt()).value == 6.0);

  CHECK(eval_direct_exact(seed, IndexSpec::gini()) == st::brute_gini(kSeedLegs));
  CHECK(st::brute_gini(kSeedLegs) == Rational(6, 24));
  CHECK(eval_direct(seed, IndexSpec::gini()).value == 0.25);

  CHECK(eval_direct_exact(seed, IndexSpec::hoover()) == st::brute_hoover(kSeedLegs));
  CHECK(st::brute_hoover(kSeedLegs) == Rational(12, 48));
  CHECK(eval_direct(seed, IndexSpec::hoover()).value == 0.25);

  const IndexValue v = eval_direct(seed, IndexSpec::zagreb());
  CHECK(v.time == 1);
  CHECK(v.index == IndexSpec::zagreb());
}

TEST_CASE("reduced forms at small (n, L)") {
  CHECK(eval_reduced(1, 3, IndexSpec::zagreb()).value == 12.0);
  CHECK(eval_reduced(4, 5, IndexSpec::zagreb()).value == 34.0);
  CHECK(st::brute_power_sum({1, 1, 1, 1, 2}, 2) == 34);
  CHECK(eval_reduced(1, 3, IndexSpec::forgotten()).value == 30.0);
  CHECK(st::brute_power_sum(kSeedLegs, 3) == 30);
  CHECK(eval_reduced(1, 3, IndexSpec::gini()).value == 0.25);
  CHECK(eval_reduced(1, 3, IndexSpec::hoover()).value == 0.25);
  CHECK(eval_reduced_exact(4, 5, IndexSpec::gini()) == st::brute_gini({1, 1, 1, 1, 2}));
}

TEST_CASE("reduced forms reject impossible leaf counts") {
  CHECK_THROWS_AS(eval_reduced(5, 2, IndexSpec::zagreb()), IndexDomainError);
  CHECK_THROWS_AS(eval_reduced(5, 8, IndexSpec::zagreb()), IndexDomainError);
  CHECK_NOTHROW(eval_reduced(5, 7, IndexSpec::zagreb()));
}

TEST_CASE("index specs") {
  CHECK_THROWS_AS(IndexSpec::generalized_zagreb(0.0), std::invalid_argument);
  CHECK_THROWS_AS(IndexSpec::parse("wiener"), std::invalid_argument);
  CHECK_THROWS_AS(IndexSpec::parse("generalized_zagreb:x"), std::invalid_argument);
  for (const auto& index : named_indices()) {
    CHECK(IndexSpec::parse(index.name()) == index);
  }
  CHECK(IndexSpec::parse("generalized_zagreb:3").has_integer_alpha());
  CHECK_FALSE(IndexSpec::parse("generalized_zagreb:2.5").has_integer_alpha());
}

TEST_CASE("generic index needs a positive h on occurring degrees") {
  const TreeState s(4, {1, 1, 1, 1, 2});
  const IndexSpec shifted = IndexSpec::generic(AffineMap{1.0, -1.0}, 2.0);
  CHECK_THROWS_AS(eval_direct(s, shifted), IndexDomainError);
  CHECK_THROWS_AS(eval_reduced(4, 5, shifted), IndexDomainError);

  const IndexSpec missing = IndexSpec::generic(TabulatedMap{{{1, 1.0}, {5, 2.0}}}, 1.0);
  CHECK_THROWS_AS(eval_direct(s, missing), IndexDomainError);

  const IndexSpec table = IndexSpec::generic(TabulatedMap{{{1, 0.5}, {2, 3.0}, {5, 4.0}}}, 2.0);
  CHECK(eval_direct(s, table).value == doctest::Approx(5 * 0.25 + 9.0 + 16.0));
  CHECK(eval_reduced(4, 5, table).value == doctest::Approx(5 * 0.25 + 9.0 + 16.0));

  const IndexSpec affine = IndexSpec::generic(AffineMap{2.0, 1.0}, 1.0);
  CHECK(eval_direct(s, affine).value == doctest::Approx(11.0 + 5 * 3.0 + 5.0));
}

TEST_CASE("exact evaluation needs integer alpha") {
  CHECK_THROWS_AS(eval_direct_exact(TreeState::seed(), IndexSpec::generalized_zagreb(0.5)),
                  IndexDomainError);
  CHECK_THROWS_AS(eval_reduced_exact(1, 3, IndexSpec::generalized_zagreb(-2)), IndexDomainError);
  CHECK(eval_reduced_exact(1, 3, IndexSpec::generalized_zagreb(5)) == 243 + 3);
}

TEST_CASE("direct and reduced evaluation agree on random trees") {
  const auto indices = named_indices();
  for (std::uint64_t stream = 0; stream < 300; ++stream) {
    RngStream rng(4242, stream);
    const double p = 0.05 + 0.9 * rng.uniform();
    const TreeState s = grow(GrowthModel::uniform(p), 1 + rng.below(500), rng);
    const auto n = s.time();
    const auto L = s.leaf_count();
    for (const auto& index : indices) {
      const double direct = eval_direct(s, index).value;
      const double reduced = eval_reduced(n, L, index).value;
      CHECK(std::abs(direct - reduced) <= 1e-12 * std::abs(direct));
      if (index.has_integer_alpha() && index.alpha() >= 1) {
        CHECK(eval_direct_exact(s, index) == eval_reduced_exact(n, L, index));
      }
    }
    CHECK(eval_direct_exact(s, IndexSpec::zagreb()) == st::brute_power_sum(s.legs(), 2));
    CHECK(eval_direct_exact(s, IndexSpec::forgotten()) == st::brute_power_sum(s.legs(), 3));
    CHECK(eval_direct_exact(s, IndexSpec::platt()) == st::brute_platt(s.legs()));
    if (s.time() <= 150) {
      CHECK(eval_direct_exact(s, IndexSpec::gini()) == st::brute_gini(s.legs()));
    }
    CHECK(eval_direct_exact(s, IndexSpec::hoover()) == st::brute_hoover(s.legs()));
  }
}

TEST_CASE("linear relations and ranges on every sample") {
  for (std::uint64_t stream = 0; stream < 300; ++stream) {
    RngStream rng(17, stream);
    const TreeState s = grow(GrowthModel::uniform(0.6), 1 + rng.below(400), rng);
    const Rational z = eval_direct_exact(s, IndexSpec::zagreb());
    const Rational gs = eval_direct_exact(s, IndexSpec::gordon_scantlebury());
    const Rational platt = eval_direct_exact(s, IndexSpec::platt());
    CHECK(z == 2 * (gs + s.edge_count()));
    CHECK(platt == 2 * gs);
    CHECK(eval_direct_exact(s, IndexSpec::generalized_zagreb(2)) == z);
    CHECK(eval_direct_exact(s, IndexSpec::generalized_zagreb(3)) ==
          eval_direct_exact(s, IndexSpec::forgotten()));
    for (const auto& index : {IndexSpec::gini(), IndexSpec::hoover()}) {
      const Rational v = eval_direct_exact(s, index);
      CHECK(v >= 0);
      CHECK(v < 1);
    }
  }
}
