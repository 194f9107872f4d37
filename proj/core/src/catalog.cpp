#include "spider/catalog.hpp"

#include <cmath>

namespace spider {

namespace {

const Bivariate n = Bivariate::n();
const Bivariate p = Bivariate::p();

Rational frac(long long num, long long den) { return Rational(num) / Rational(den); }

Bivariate constant(const Rational& c) { return Bivariate(c); }

RationalFunction poly(Bivariate numerator) { return RationalFunction{std::move(numerator)}; }

MomentCatalogEntry leaves_entry() {
  MomentCatalogEntry e{IndexSpec::leaves(), "E(L_n)", "V(L_n)", {}, {}};
  e.mean = poly(3 + (n - 1) * p);
  e.variance = poly((n - 1) * (1 - p) * p);
  e.clt = CltNormalizer{3 + (n - 1) * p, Rational(1), p * (1 - p), 1};
  return e;
}

Bivariate zagreb_variance() {
  return (-4 * p.pow(4) + 4 * p.pow(3)) * n.pow(3) +
         (22 * p.pow(4) - 40 * p.pow(3) + 18 * p.pow(2)) * n.pow(2) +
         (-38 * p.pow(4) + 92 * p.pow(3) - 70 * p.pow(2) + 16 * p) * n +
         (20 * p.pow(4) - 56 * p.pow(3) + 52 * p.pow(2) - 16 * p);
}

Bivariate cubic_clt_scale() { return p.pow(3) * (1 - p); }

MomentCatalogEntry zagreb_entry() {
  MomentCatalogEntry e{IndexSpec::zagreb(), "E(Z_n)", "V(Z_n)", {}, {}};
  e.mean = poly(n.pow(2) * p.pow(2) + (-3 * p.pow(2) + 4 * p + 4) * n + 2 * p.pow(2) - 4 * p + 8);
  e.variance = poly(zagreb_variance());
  e.limit = LimitConstant{p.pow(2), 2.0};
  e.clt = CltNormalizer{n.pow(2) * p.pow(2), Rational(2), cubic_clt_scale(), 3};
  return e;
}

MomentCatalogEntry gordon_scantlebury_entry() {
  MomentCatalogEntry e{IndexSpec::gordon_scantlebury(), "E(S_n)", "V(S_n)", {}, {}};
  e.mean = poly(constant(frac(1, 2)) * n.pow(2) * p.pow(2) +
                (constant(frac(-3, 2)) * p.pow(2) + 2 * p + 1) * n + p.pow(2) - 2 * p + 2);
  e.variance = poly(
      (-p.pow(4) + p.pow(3)) * n.pow(3) +
      (constant(frac(11, 2)) * p.pow(4) - 10 * p.pow(3) + constant(frac(9, 2)) * p.pow(2)) *
          n.pow(2) +
      (constant(frac(-19, 2)) * p.pow(4) + 23 * p.pow(3) - constant(frac(35, 2)) * p.pow(2) +
       4 * p) *
          n +
      (5 * p.pow(4) - 14 * p.pow(3) + 13 * p.pow(2) - 4 * p));
  e.limit = LimitConstant{constant(frac(1, 2)) * p.pow(2), 2.0};
  e.clt = CltNormalizer{constant(frac(1, 2)) * n.pow(2) * p.pow(2), Rational(1),
                        cubic_clt_scale(), 3};
  return e;
}

MomentCatalogEntry platt_entry() {
  MomentCatalogEntry e{IndexSpec::platt(), "E(P_n)", "V(P_n)", {}, {}};
  e.mean = poly(n.pow(2) * p.pow(2) + (-3 * p.pow(2) + 4 * p + 2) * n + 2 * p.pow(2) - 4 * p + 4);
  // The Platt index is 2S_n = Z_n - 2(n + 2), so it shares V(Z_n).
  e.variance = poly(zagreb_variance());
  e.limit = LimitConstant{p.pow(2), 2.0};
  e.clt = CltNormalizer{n.pow(2) * p.pow(2), Rational(2), cubic_clt_scale(), 3};
  return e;
}

MomentCatalogEntry forgotten_entry() {
  MomentCatalogEntry e{IndexSpec::forgotten(), "E(F_n)", "V(F_n)", {}, {}};
  e.mean = poly(n.pow(3) * p.pow(3) + (12 * p.pow(2) - 6 * p.pow(3)) * n.pow(2) +
                (11 * p.pow(3) - 36 * p.pow(2) + 30 * p + 8) * n - 6 * p.pow(3) +
                24 * p.pow(2) - 30 * p + 22);
  const Bivariate q = 1 - p;
  e.variance = poly(
      9 * p.pow(5) * q * n.pow(5) - 9 * p.pow(4) * q * (13 * p - 18) * n.pow(4) +
      3 * p.pow(3) * q * (197 * p.pow(2) - 490 * p + 302) * n.pow(3) -
      9 * p.pow(2) * q * (159 * p.pow(3) - 530 * p.pow(2) + 572 * p - 192) * n.pow(2) -
      6 * p * q.pow(2) * (272 * p.pow(3) - 803 * p.pow(2) + 714 * p - 150) * n +
      36 * p * q.pow(2) * (19 * p.pow(3) - 64 * p.pow(2) + 71 * p - 25));
  e.limit = LimitConstant{p.pow(3), 3.0};
  return e;
}

MomentCatalogEntry gini_entry() {
  MomentCatalogEntry e{IndexSpec::gini(), "E(G_n)", "V(G_n)", {}, {}};
  const Bivariate q = 1 - p;
  e.mean = RationalFunction{
      (2 * p - p.pow(2)) * n.pow(2) + (3 * p.pow(2) - 4 * p + 4) * n - 2 * p.pow(2) + 2 * p + 2,
      2 * (n + 3) * (n + 2)};
  e.variance = RationalFunction{
      4 * p * q.pow(3) * n.pow(3) + 2 * p * (11 * p - 6) * q.pow(2) * n.pow(2) +
          2 * p * q * (19 * p.pow(2) - 23 * p + 6) * n - 4 * p * q * (5 * p.pow(2) - 5 * p + 1),
      4 * (n + 3).pow(2) * (n + 2).pow(2)};
  e.limit = LimitConstant{constant(frac(1, 2)) * p * (2 - p), 0.0};
  return e;
}

MomentCatalogEntry hoover_entry() {
  MomentCatalogEntry e{IndexSpec::hoover(), "E(H_n)", "V(H_n)", {}, {}};
  e.mean = RationalFunction{p * n.pow(2) + 3 * n + 3 - p, 2 * (n + 3) * (n + 2)};
  e.variance = RationalFunction{p * (1 - p) * (n.pow(2) - 1) * (n + 1),
                                4 * (n + 3).pow(2) * (n + 2).pow(2)};
  e.limit = LimitConstant{constant(frac(1, 2)) * p, 0.0};
  return e;
}

MomentCatalogEntry generalized_zagreb_entry(const IndexSpec& index) {
  if (!index.has_integer_alpha()) {
    throw UnknownCatalogEntry("no closed-form moments for " + index.name() +
                              " (integer alpha >= 1 required)");
  }
  const auto alpha = static_cast<unsigned>(index.alpha());
  if (alpha == 1) {
    // Sum of degrees: 2(n + 2) on every tree.
    MomentCatalogEntry e{index, "E(Z^g_n), alpha = 1", "V(Z^g_n), alpha = 1", {}, {}};
    e.mean = poly(2 * (n + 2));
    e.variance = poly(Bivariate(0));
    return e;
  }
  if (alpha == 2 || alpha == 3) {
    MomentCatalogEntry e = alpha == 2 ? zagreb_entry() : forgotten_entry();
    e.index = index;
    e.limit = LimitConstant{p.pow(alpha), static_cast<double>(alpha)};
    return e;
  }
  MomentCatalogEntry e{index, "E(Z^g_n) two-term expansion", "V(Z^g_n) leading term", {}, {}};
  const Bivariate a(static_cast<long long>(alpha));
  e.mean = poly(p.pow(alpha) * n.pow(alpha) +
                constant(frac(alpha, 2)) * (a * (1 - p) - p + 5) * p.pow(alpha - 1) *
                    n.pow(alpha - 1));
  e.variance = poly(a.pow(2) * (1 - p) * p.pow(2 * alpha - 1) * n.pow(2 * alpha - 1));
  e.exact = false;
  e.limit = LimitConstant{p.pow(alpha), static_cast<double>(alpha)};
  return e;
}

}  // namespace

double CltNormalizer::center_at(double n_value, double p_value) const {
  return center.eval(n_value, p_value);
}

double CltNormalizer::scale_at(double n_value, double p_value, double k) const {
  const double shifted = n_value + k;
  if (!(shifted > 0.0)) {
    throw std::invalid_argument("CLT normalizer needs n + k > 0");
  }
  return to_double(factor) *
         std::sqrt(scale_p.eval(n_value, p_value) * std::pow(shifted, static_cast<double>(n_power)));
}

std::optional<double> MomentCatalogEntry::limit_at(double p_value) const {
  if (!limit) {
    return std::nullopt;
  }
  return limit->value.eval(0.0, p_value);
}

const MomentCatalog& MomentCatalog::standard() {
  static const MomentCatalog catalog = [] {
    MomentCatalog c;
    c.entries_ = {leaves_entry(),  zagreb_entry(), gordon_scantlebury_entry(), platt_entry(),
                  forgotten_entry(), gini_entry(), hoover_entry()};
    return c;
  }();
  return catalog;
}

MomentCatalogEntry MomentCatalog::entry(const IndexSpec& index) const {
  for (const auto& e : entries_) {
    if (e.index == index) {
      return e;
    }
  }
  if (index.kind() == IndexKind::GeneralizedZagreb) {
    return generalized_zagreb_entry(index);
  }
  throw UnknownCatalogEntry("no moment catalog entry for index '" + index.name() + "'");
}

void MomentCatalog::put(MomentCatalogEntry entry) {
  for (auto& e : entries_) {
    if (e.index == entry.index) {
      e = std::move(entry);
      return;
    }
  }
  entries_.push_back(std::move(entry));
}

MomentCatalogEntry moment_catalog(const IndexSpec& index) {
  return MomentCatalog::standard().entry(index);
}

}  // namespace spider
