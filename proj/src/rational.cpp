#include "stepahp/rational.hpp"

#include <charconv>
#include <numeric>

#include "stepahp/errors.hpp"

namespace stepahp {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::reciprocal() const { return Rational(den_, num_); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first so small judgment products never overflow.
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const std::string_view num_part = text.substr(0, slash);
  const std::string_view den_part = text.substr(slash + 1);
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const bool negative = !num_part.empty() && num_part.front() == '-';
  const std::string_view num_digits = negative ? num_part.substr(1) : num_part;
  if (!digits_only(num_digits) || !digits_only(den_part)) return std::nullopt;
  // No leading zeros so that every value has exactly one spelling.
  if ((num_digits.size() > 1 && num_digits.front() == '0') ||
      (den_part.size() > 1 && den_part.front() == '0')) {
    return std::nullopt;
  }

  std::int64_t n = 0;
  std::int64_t d = 0;
  if (std::from_chars(num_digits.data(), num_digits.data() + num_digits.size(), n).ec !=
          std::errc{} ||
      std::from_chars(den_part.data(), den_part.data() + den_part.size(), d).ec != std::errc{}) {
    return std::nullopt;
  }
  if (d == 0) return std::nullopt;
  if (negative) {
    if (n == 0) return std::nullopt;
    n = -n;
  }
  Rational r(n, d);
  if (r.num_ != n || r.den_ != d) return std::nullopt;  // not in lowest terms
  return r;
}

}  // namespace stepahp
