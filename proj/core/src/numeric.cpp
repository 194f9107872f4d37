#include "spider/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace spider {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view original) {
  if (digits.empty()) {
    throw std::invalid_argument("malformed number: '" + std::string(original) + "'");
  }
  for (char c : digits) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw std::invalid_argument("malformed number: '" + std::string(original) + "'");
    }
  }
  const auto first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
  return BigInt(std::string(digits.substr(first)));
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string exp_text(text.substr(e + 1));
    try {
      std::size_t used = 0;
      exponent = std::stoll(exp_text, &used);
      if (used != exp_text.size()) {
        throw std::invalid_argument("trailing");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number: '" + std::string(original) + "'");
    }
    text = text.substr(0, e);
  }

  std::string digits;
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(text);
  } else {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    exponent -= static_cast<long long>(text.size() - dot - 1);
  }
  if (digits.empty() || digits == ".") {
    throw std::invalid_argument("malformed number: '" + std::string(original) + "'");
  }
  Rational value(parse_integer(digits, original));
  if (exponent > 0) {
    value *= Rational(ipow(BigInt(10), static_cast<std::uint64_t>(exponent)));
  } else if (exponent < 0) {
    value /= Rational(ipow(BigInt(10), static_cast<std::uint64_t>(-exponent)));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view original = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())) != 0) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())) != 0) {
    text.remove_suffix(1);
  }
  if (text.empty()) {
    throw std::invalid_argument("empty number");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), original);
    Rational den = parse_decimal(text.substr(slash + 1), original);
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(original) + "'");
    }
    return num / den;
  }
  return parse_decimal(text, original);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) {
    return numerator(value).str();
  }
  return numerator(value).str() + "/" + denominator(value).str();
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return BigInt(0);
  }
  k = std::min(k, n - k);
  BigInt result(1);
  // result stays integral: after step j it equals C(n - k + j, j).
  for (std::uint64_t j = 1; j <= k; ++j) {
    result *= (n - k + j);
    result /= j;
  }
  return result;
}

}  // namespace spider
