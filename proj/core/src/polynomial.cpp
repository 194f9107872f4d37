#include "spider/polynomial.hpp"

#include <algorithm>

namespace spider {

Bivariate::Bivariate(const Rational& constant) {
  if (constant != 0) {
    terms_ = {{constant}};
  }
}

Bivariate::Bivariate(long long constant) : Bivariate(Rational(constant)) {}

Bivariate Bivariate::n() {
  Bivariate b;
  b.terms_ = {{Rational(0)}, {Rational(1)}};
  return b;
}

Bivariate Bivariate::p() {
  Bivariate b;
  b.terms_ = {{Rational(0), Rational(1)}};
  return b;
}

Rational Bivariate::coeff(std::size_t n_power, std::size_t p_power) const {
  if (n_power >= terms_.size() || p_power >= terms_[n_power].size()) {
    return Rational(0);
  }
  return terms_[n_power][p_power];
}

std::size_t Bivariate::n_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.size() - 1;
}

std::size_t Bivariate::p_degree() const noexcept {
  std::size_t degree = 0;
  for (const auto& row : terms_) {
    if (!row.empty()) {
      degree = std::max(degree, row.size() - 1);
    }
  }
  return degree;
}

void Bivariate::trim() {
  for (auto& row : terms_) {
    while (!row.empty() && row.back() == 0) {
      row.pop_back();
    }
  }
  while (!terms_.empty() && terms_.back().empty()) {
    terms_.pop_back();
  }
}

Bivariate& Bivariate::operator+=(const Bivariate& rhs) {
  if (terms_.size() < rhs.terms_.size()) {
    terms_.resize(rhs.terms_.size());
  }
  for (std::size_t i = 0; i < rhs.terms_.size(); ++i) {
    auto& row = terms_[i];
    const auto& other = rhs.terms_[i];
    if (row.size() < other.size()) {
      row.resize(other.size(), Rational(0));
    }
    for (std::size_t j = 0; j < other.size(); ++j) {
      row[j] += other[j];
    }
  }
  trim();
  return *this;
}

Bivariate& Bivariate::operator-=(const Bivariate& rhs) { return *this += -rhs; }

Bivariate operator-(Bivariate a) {
  for (auto& row : a.terms_) {
    for (auto& c : row) {
      c = -c;
    }
  }
  return a;
}

Bivariate& Bivariate::operator*=(const Bivariate& rhs) {
  if (is_zero() || rhs.is_zero()) {
    terms_.clear();
    return *this;
  }
  std::vector<std::vector<Rational>> out(terms_.size() + rhs.terms_.size() - 1);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t k = 0; k < rhs.terms_.size(); ++k) {
      const auto& a = terms_[i];
      const auto& b = rhs.terms_[k];
      if (a.empty() || b.empty()) {
        continue;
      }
      auto& row = out[i + k];
      if (row.size() < a.size() + b.size() - 1) {
        row.resize(a.size() + b.size() - 1, Rational(0));
      }
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) {
          continue;
        }
        for (std::size_t l = 0; l < b.size(); ++l) {
          row[j + l] += a[j] * b[l];
        }
      }
    }
  }
  terms_ = std::move(out);
  trim();
  return *this;
}

Bivariate Bivariate::pow(std::uint64_t exponent) const { return ipow(*this, exponent); }

Bivariate pow(const Bivariate& base, std::uint64_t exponent) { return base.pow(exponent); }

template <class T>
T Bivariate::eval(const T& n_value, const T& p_value) const {
  // Horner in n over Horner-in-p coefficients.
  T result(0);
  for (auto row = terms_.rbegin(); row != terms_.rend(); ++row) {
    T inner(0);
    for (auto c = row->rbegin(); c != row->rend(); ++c) {
      if constexpr (is_exact_v<T>) {
        inner = inner * p_value + *c;
      } else {
        inner = inner * p_value + to_double(*c);
      }
    }
    result = result * n_value + inner;
  }
  return result;
}

template double Bivariate::eval<double>(const double&, const double&) const;
template Rational Bivariate::eval<Rational>(const Rational&, const Rational&) const;

std::vector<std::vector<Rational>> Bivariate::descending() const {
  std::vector<std::vector<Rational>> out;
  if (terms_.empty()) {
    out.push_back({Rational(0)});
    return out;
  }
  for (auto row = terms_.rbegin(); row != terms_.rend(); ++row) {
    std::vector<Rational> coeffs(row->rbegin(), row->rend());
    if (coeffs.empty()) {
      coeffs.push_back(Rational(0));
    }
    out.push_back(std::move(coeffs));
  }
  return out;
}

}  // namespace spider
