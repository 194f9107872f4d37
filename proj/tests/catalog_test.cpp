#include <doctest.h>

#include <cmath>

#include "spider/catalog.hpp"
#include "spider/leaf_law.hpp"
#include "spider/oracle.hpp"
#include "spider/serialize.hpp"
#include "spider/verify.hpp"

using namespace spider;

namespace {

std::vector<Rational> tenths() {
  std::vector<Rational> ps;
  for (int i = 1; i <= 9; ++i) {
    ps.emplace_back(i, 10);
  }
  return ps;
}

}  // namespace

TEST_CASE("catalog means at n = 1 are the seed values") {
  const MomentCatalog& catalog = MomentCatalog::standard();
  const std::vector<std::pair<IndexSpec, Rational>> seed{
      {IndexSpec::leaves(), 3},         {IndexSpec::zagreb(), 12},
      {IndexSpec::gordon_scantlebury(), 3}, {IndexSpec::platt(), 6},
      {IndexSpec::forgotten(), 30},     {IndexSpec::gini(), Rational(1, 4)},
      {IndexSpec::hoover(), Rational(1, 4)}};
  for (const auto& [index, value] : seed) {
    const MomentCatalogEntry e = catalog.entry(index);
    for (const auto& p : tenths()) {
      CHECK(e.mean_at(1, p) == value);
      CHECK(e.variance_at(1, p) == 0);
    }
  }
  CHECK(catalog.entry(IndexSpec::zagreb()).mean_at(1, Rational(7, 10)) == 12);
  CHECK(catalog.entry(IndexSpec::forgotten()).variance_at(1, Rational(1, 3)) == 0);
}

TEST_CASE("closed-form anchor values") {
  const MomentCatalog& catalog = MomentCatalog::standard();
  // E(H_n) = (p n^2 + 3n + 3 - p) / (2(n+3)(n+2)).
  CHECK(catalog.entry(IndexSpec::hoover()).mean_at(10, Rational(1, 2)) == Rational(825, 3120));
  CHECK(catalog.entry(IndexSpec::hoover()).limit_at(0.5).value() == 0.25);
  CHECK(catalog.entry(IndexSpec::gini()).limit_at(0.5).value() == 0.375);
  CHECK(catalog.entry(IndexSpec::gordon_scantlebury()).limit_at(0.4).value() ==
        doctest::Approx(0.08));
  CHECK(catalog.entry(IndexSpec::forgotten()).limit_at(0.5).value() == 0.125);
  CHECK(catalog.entry(IndexSpec::generalized_zagreb(5)).limit_at(0.5).value() ==
        doctest::Approx(1.0 / 32));
  CHECK_FALSE(catalog.entry(IndexSpec::leaves()).limit_at(0.5).has_value());

  const double big = 1e9;
  CHECK(catalog.entry(IndexSpec::hoover()).mean_at(1'000'000'000, 0.5) ==
        doctest::Approx(0.25).epsilon(1e-8));
  CHECK(catalog.entry(IndexSpec::gini()).mean_at(1'000'000'000, 0.5) ==
        doctest::Approx(0.375).epsilon(1e-8));
  CHECK(catalog.entry(IndexSpec::zagreb()).mean_at(1'000'000'000, 0.3) / (big * big) ==
        doctest::Approx(0.09).epsilon(1e-8));
  // V(P_n) = V(Z_n).
  for (const auto& p : tenths()) {
    for (std::uint64_t n : {2U, 19U, 400U}) {
      CHECK(catalog.entry(IndexSpec::platt()).variance_at(n, p) ==
            catalog.entry(IndexSpec::zagreb()).variance_at(n, p));
    }
  }
}

TEST_CASE("catalog agrees with the summation oracle") {
  const MomentCatalog& catalog = MomentCatalog::standard();
  for (const auto& e : catalog.entries()) {
    for (const Rational& p : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
      for (std::uint64_t n = 1; n <= 12; ++n) {
        CHECK(e.mean_at(n, p) == oracle_mean(e.index, n, p));
        CHECK(e.variance_at(n, p) == oracle_variance(e.index, n, p));
      }
    }
  }
  CHECK(oracle_mean(IndexSpec::zagreb(), 1, Rational(3, 7)) == 12);
  CHECK(oracle_mean(IndexSpec::leaves(), 2, Rational(1, 2)) == Rational(7, 2));
  CHECK(oracle_variance(IndexSpec::leaves(), 2, Rational(1, 2)) == Rational(1, 4));
  CHECK(oracle_mean(IndexSpec::gini(), 30, 0.3) ==
        doctest::Approx(catalog.entry(IndexSpec::gini()).mean_at(30, 0.3)).epsilon(1e-12));
}

TEST_CASE("variance polynomials are nonnegative") {
  for (const auto& e : MomentCatalog::standard().entries()) {
    for (double p = 0.01; p < 1.0; p += 0.07) {
      for (std::uint64_t n : {1U, 2U, 3U, 7U, 50U, 1000U, 100000U}) {
        CHECK(e.variance_at(n, p) >= -1e-9 * std::abs(e.mean_at(n, p) * e.mean_at(n, p)));
      }
    }
  }
}

TEST_CASE("generalized zagreb entries") {
  const MomentCatalog& catalog = MomentCatalog::standard();
  const auto one = catalog.entry(IndexSpec::generalized_zagreb(1));
  CHECK(one.exact);
  CHECK(one.mean_at(17, Rational(1, 3)) == 38);
  CHECK(one.variance_at(17, Rational(1, 3)) == 0);

  const auto two = catalog.entry(IndexSpec::generalized_zagreb(2));
  const auto z = catalog.entry(IndexSpec::zagreb());
  CHECK(two.exact);
  CHECK(two.mean_at(23, Rational(2, 5)) == z.mean_at(23, Rational(2, 5)));
  CHECK(two.variance_at(23, Rational(2, 5)) == z.variance_at(23, Rational(2, 5)));
  CHECK(two.index == IndexSpec::generalized_zagreb(2));

  const auto three = catalog.entry(IndexSpec::generalized_zagreb(3));
  CHECK(three.mean_at(23, Rational(2, 5)) ==
        catalog.entry(IndexSpec::forgotten()).mean_at(23, Rational(2, 5)));

  const auto four = catalog.entry(IndexSpec::generalized_zagreb(4));
  CHECK_FALSE(four.exact);
  const double n = 1e5;
  const double p = 0.6;
  const double oracle = oracle_mean(IndexSpec::generalized_zagreb(4), 100000, p);
  CHECK(std::abs(four.mean_at(100000, p) - oracle) / oracle < 1e-7);
  const double var_oracle = oracle_variance(IndexSpec::generalized_zagreb(4), 100000, p);
  CHECK(four.variance_at(100000, p) / var_oracle == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(four.variance_at(100000, p) ==
        doctest::Approx(16 * (1 - p) * std::pow(p, 7) * std::pow(n, 7)));

  CHECK_THROWS_AS(catalog.entry(IndexSpec::generalized_zagreb(2.5)), UnknownCatalogEntry);
  CHECK_THROWS_AS(catalog.entry(IndexSpec::generalized_zagreb(-1)), UnknownCatalogEntry);
  CHECK_THROWS_AS(moment_catalog(IndexSpec::generic(IdentityMap{}, 2.0)), UnknownCatalogEntry);
}

TEST_CASE("clt normalizers") {
  const auto leaves = MomentCatalog::standard().entry(IndexSpec::leaves()).clt.value();
  CHECK(leaves.center_at(101, 0.3) == doctest::Approx(33.0));
  CHECK(leaves.scale_at(101, 0.3, 0) == doctest::Approx(std::sqrt(0.21 * 101)));
  CHECK(leaves.scale_at(101, 0.3, -1) == doctest::Approx(std::sqrt(0.21 * 100)));
  CHECK_THROWS_AS(leaves.scale_at(10, 0.3, -10), std::invalid_argument);

  const auto zagreb = MomentCatalog::standard().entry(IndexSpec::zagreb()).clt.value();
  CHECK(zagreb.center_at(100, 0.5) == doctest::Approx(2500.0));
  CHECK(zagreb.scale_at(100, 0.5, 0) ==
        doctest::Approx(2 * std::sqrt(0.125 * 0.5 * 1e6)));

  const auto gs = MomentCatalog::standard().entry(IndexSpec::gordon_scantlebury()).clt.value();
  CHECK(gs.center_at(100, 0.5) == doctest::Approx(1250.0));
  CHECK(gs.scale_at(100, 0.5, 0) == doctest::Approx(std::sqrt(0.125 * 0.5 * 1e6)));

  CHECK_FALSE(MomentCatalog::standard().entry(IndexSpec::gini()).clt.has_value());
  CHECK_FALSE(MomentCatalog::standard().entry(IndexSpec::forgotten()).clt.has_value());
}

TEST_CASE("verifier flags a corrupted formula once with a witness") {
  MomentCatalog catalog = MomentCatalog::standard();
  auto entry = catalog.entry(IndexSpec::forgotten());
  entry.variance.numerator += Bivariate::n() * Bivariate::p();
  catalog.put(entry);
  const std::vector<Rational> ps{Rational(1, 2), Rational(1, 3)};
  const SuiteResult r = verify_catalog_against_oracle(catalog, ps, 6);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].find("forgotten") != std::string::npos);
  CHECK(r.failures[0].find(entry.variance_label) != std::string::npos);
  CHECK(r.failures[0].find("n=1, p=1/2") != std::string::npos);
  CHECK(verify_catalog_against_oracle(MomentCatalog::standard(), ps, 6).passed());
}

TEST_CASE("quick verification passes") {
  const VerificationReport report = run_verification(VerifyLevel::Quick, MomentCatalog::standard());
  for (const auto& s : report.suites) {
    INFO(s.name);
    CHECK(s.passed());
    CHECK(s.checks > 0);
  }
  CHECK(verification_ps(VerifyLevel::Full).size() == 9);
  CHECK(verification_ps(VerifyLevel::Quick).size() == 5);
}

TEST_CASE("catalog json export") {
  const auto json = catalog_entry_to_json(MomentCatalog::standard().entry(IndexSpec::zagreb()));
  CHECK(json.at("index") == "zagreb");
  // n^2 p^2 + (-3p^2 + 4p + 4) n + 2p^2 - 4p + 8
  CHECK(json.at("mean_coeffs") ==
        nlohmann::json::parse(R"([["1","0","0"],["-3","4","4"],["2","-4","8"]])"));
  CHECK(json.at("limit").at("scaling_exponent") == 2.0);
  CHECK(json.at("clt_scale").at("factor") == "2");
  CHECK(json.at("clt_scale").at("n_plus_k_power") == 3);

  const auto gini = catalog_entry_to_json(MomentCatalog::standard().entry(IndexSpec::gini()));
  CHECK(gini.at("clt_center").is_null());
  CHECK(gini.at("clt_scale").is_null());
  CHECK(gini.at("mean_denominator") ==
        nlohmann::json::parse(R"([["2"],["10"],["12"]])"));
  const auto leaves = catalog_entry_to_json(MomentCatalog::standard().entry(IndexSpec::leaves()));
  CHECK(leaves.at("limit").is_null());
}
