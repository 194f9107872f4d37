#include "spider/indices.hpp"

#include <cmath>
#include <sstream>

namespace spider {

namespace {

template <class T>
T to_scalar(double x) {
  if constexpr (is_exact_v<T>) {
    return Rational(x);  // exact binary expansion of x
  } else {
    return x;
  }
}

template <class T>
T power(const T& base, const IndexSpec& index) {
  if constexpr (is_exact_v<T>) {
    if (!index.has_integer_alpha()) {
      throw IndexDomainError("exact evaluation of " + index.name() +
                             " needs a positive integer alpha");
    }
    return ipow(base, static_cast<std::uint64_t>(index.alpha()));
  } else {
    if (index.has_integer_alpha()) {
      return ipow(base, static_cast<std::uint64_t>(index.alpha()));
    }
    return std::pow(base, index.alpha());
  }
}

// h(d)^alpha, with the positivity check h requires.
template <class T>
T transformed_power(std::uint64_t degree, const IndexSpec& index) {
  double h = 0.0;
  std::visit(
      [&](const auto& map) {
        using M = std::decay_t<decltype(map)>;
        if constexpr (std::is_same_v<M, IdentityMap>) {
          h = static_cast<double>(degree);
        } else if constexpr (std::is_same_v<M, AffineMap>) {
          h = map.a * static_cast<double>(degree) + map.b;
        } else {
          auto it = map.values.find(degree);
          if (it == map.values.end()) {
            throw IndexDomainError(index.name() + ": h is not defined at degree " +
                                   std::to_string(degree));
          }
          h = it->second;
        }
      },
      index.transform());
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw IndexDomainError(index.name() + ": h must be positive at degree " +
                           std::to_string(degree));
  }
  if constexpr (is_exact_v<T>) {
    if (const auto* affine = std::get_if<AffineMap>(&index.transform())) {
      // Keep a*d + b exact instead of rounding it through double.
      const Rational exact_h = Rational(affine->a) * Rational(degree) + Rational(affine->b);
      return power<T>(exact_h, index);
    }
  }
  return power<T>(to_scalar<T>(h), index);
}

template <class T>
T platt_direct(const TreeState& state) {
  const std::uint64_t centroid_degree = state.leaf_count();
  T total(0);
  for (auto len : state.legs()) {
    // Edge from the centroid to the first node of the leg.
    const std::uint64_t first_degree = len == 1 ? 1 : 2;
    total += T(centroid_degree + first_degree - 2);
    if (len >= 2) {
      total += T(2 * (len - 2));  // internal-internal edges, 2 + 2 - 2 each
      total += T(1);              // internal-leaf edge, 2 + 1 - 2
    }
  }
  return total;
}

template <class T>
T direct_value(const TreeState& state, const IndexSpec& index) {
  const DegreeCounts degrees = degree_multiset(state);
  std::uint64_t node_count = 0;
  std::uint64_t degree_sum = 0;
  for (const auto& [d, c] : degrees) {
    node_count += c;
    degree_sum += d * c;
  }

  switch (index.kind()) {
    case IndexKind::Leaves: {
      auto it = degrees.find(1);
      return T(it == degrees.end() ? 0 : it->second);
    }
    case IndexKind::Zagreb:
    case IndexKind::Forgotten:
    case IndexKind::GeneralizedZagreb:
    case IndexKind::Generic: {
      T total(0);
      for (const auto& [d, c] : degrees) {
        total += T(c) * transformed_power<T>(d, index);
      }
      return total;
    }
    case IndexKind::GordonScantlebury: {
      T total(0);
      for (const auto& [d, c] : degrees) {
        total += T(c * d * (d - 1) / 2);
      }
      return total;
    }
    case IndexKind::Platt:
      return platt_direct<T>(state);
    case IndexKind::Gini: {
      T pair_sum(0);
      for (auto a = degrees.begin(); a != degrees.end(); ++a) {
        for (auto b = std::next(a); b != degrees.end(); ++b) {
          pair_sum += T(a->second * b->second * (b->first - a->first));
        }
      }
      // N^2 * mean degree = N * sum of degrees.
      return pair_sum / (T(node_count) * T(degree_sum));
    }
    case IndexKind::Hoover: {
      T deviation(0);
      for (const auto& [d, c] : degrees) {
        const auto scaled = static_cast<std::int64_t>(node_count * d);
        const auto mean_scaled = static_cast<std::int64_t>(degree_sum);
        deviation += T(c) * T(static_cast<std::uint64_t>(std::llabs(scaled - mean_scaled)));
      }
      return deviation / (T(2) * T(node_count) * T(degree_sum));
    }
  }
  throw std::logic_error("unhandled index kind");
}

template <class T>
T reduced(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index) {
  if (n == 0 || leaves < 3 || leaves > n + 2) {
    throw IndexDomainError("reduced form needs 3 <= L <= n + 2, got n = " + std::to_string(n) +
                           ", L = " + std::to_string(leaves));
  }
  const T N(n);
  const T L(leaves);
  switch (index.kind()) {
    case IndexKind::Leaves:
      return L;
    case IndexKind::Zagreb:
      return L * L - T(3) * L + T(4) * (N + T(2));
    case IndexKind::GordonScantlebury:
      return (L * L - T(3) * L + T(4) * (N + T(2))) / T(2) - N - T(2);
    case IndexKind::Platt:
      return L * L - T(3) * L + T(4) * (N + T(2)) - T(2) * (N + T(2));
    case IndexKind::Forgotten:
      return L * L * L - T(7) * L + T(8) * (N + T(2));
    case IndexKind::GeneralizedZagreb:
    case IndexKind::Generic: {
      const T h1 = transformed_power<T>(1, index);
      const T hL = transformed_power<T>(leaves, index);
      // No internal nodes when L = n + 2, so h(2) is then never consulted.
      const T h2 = leaves == n + 2 ? T(0) : transformed_power<T>(2, index);
      return hL + (h1 - h2) * L + h2 * (N + T(2));
    }
    case IndexKind::Gini:
      return (-L * L + (T(2) * N + T(5)) * L - T(2) * N - T(4)) /
             (T(2) * (N + T(3)) * (N + T(2)));
    case IndexKind::Hoover:
      return (N + T(1)) * L / (T(2) * (N + T(3)) * (N + T(2)));
  }
  throw std::logic_error("unhandled index kind");
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

IndexSpec IndexSpec::generalized_zagreb(double alpha) {
  if (alpha == 0.0 || !std::isfinite(alpha)) {
    throw std::invalid_argument("generalized_zagreb: alpha must be finite and nonzero");
  }
  return IndexSpec(IndexKind::GeneralizedZagreb, alpha);
}

IndexSpec IndexSpec::generic(DegreeTransform h, double alpha) {
  if (!std::isfinite(alpha)) {
    throw std::invalid_argument("generic index: alpha must be finite");
  }
  return IndexSpec(IndexKind::Generic, alpha, std::move(h));
}

IndexSpec IndexSpec::parse(std::string_view name) {
  if (name == "leaves") return leaves();
  if (name == "zagreb") return zagreb();
  if (name == "gordon_scantlebury") return gordon_scantlebury();
  if (name == "platt") return platt();
  if (name == "forgotten") return forgotten();
  if (name == "gini") return gini();
  if (name == "hoover") return hoover();
  constexpr std::string_view prefix = "generalized_zagreb:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string alpha_text(name.substr(prefix.size()));
    double alpha = 0.0;
    try {
      std::size_t used = 0;
      alpha = std::stod(alpha_text, &used);
      if (used != alpha_text.size()) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("index: cannot parse alpha in '" + std::string(name) + "'");
    }
    return generalized_zagreb(alpha);
  }
  throw std::invalid_argument("unknown index '" + std::string(name) + "'");
}

std::string IndexSpec::name() const {
  switch (kind_) {
    case IndexKind::Leaves: return "leaves";
    case IndexKind::Zagreb: return "zagreb";
    case IndexKind::GordonScantlebury: return "gordon_scantlebury";
    case IndexKind::Platt: return "platt";
    case IndexKind::Forgotten: return "forgotten";
    case IndexKind::Gini: return "gini";
    case IndexKind::Hoover: return "hoover";
    case IndexKind::GeneralizedZagreb: return "generalized_zagreb:" + format_number(alpha_);
    case IndexKind::Generic: {
      std::string h = std::visit(
          [](const auto& map) -> std::string {
            using M = std::decay_t<decltype(map)>;
            if constexpr (std::is_same_v<M, IdentityMap>) {
              return "identity";
            } else if constexpr (std::is_same_v<M, AffineMap>) {
              return "affine(" + format_number(map.a) + "," + format_number(map.b) + ")";
            } else {
              return "tabulated";
            }
          },
          h_);
      return "generic(" + h + ")^" + format_number(alpha_);
    }
  }
  return "unknown";
}

bool IndexSpec::has_integer_alpha() const noexcept {
  return alpha_ >= 1.0 && alpha_ <= 1e6 && std::floor(alpha_) == alpha_;
}

IndexValue eval_direct(const TreeState& state, const IndexSpec& index) {
  return IndexValue{direct_value<double>(state, index), index, state.time()};
}

Rational eval_direct_exact(const TreeState& state, const IndexSpec& index) {
  return direct_value<Rational>(state, index);
}

IndexValue eval_reduced(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index) {
  return IndexValue{reduced<double>(n, leaves, index), index, n};
}

Rational eval_reduced_exact(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index) {
  return reduced<Rational>(n, leaves, index);
}

double reduced_value(std::uint64_t n, std::uint64_t leaves, const IndexSpec& index) {
  return reduced<double>(n, leaves, index);
}

}  // namespace spider
