#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "stepahp/rational.hpp"

namespace stepahp {

// Exponents of 2, 3, 5 and 7. Every Saaty grade factors over these primes,
// which lets group aggregation stay exact and order-independent.
using PrimeExponents = std::array<int, 4>;
inline constexpr std::array<int, 4> kScalePrimes = {2, 3, 5, 7};

// One of the 17 admissible pairwise judgments: 1/9, ..., 1/2, 1, 2, ..., 9.
class SaatyValue {
 public:
  constexpr SaatyValue() = default;

  // Integer grade 1..9 (the "i dominates j" side).
  static SaatyValue grade(int g);
  static std::optional<SaatyValue> from_rational(const Rational& r);
  // Nearest grid value to x in log space. Ties resolve toward 1.
  static SaatyValue snap(double x);

  // All 17 values in ascending order.
  static std::span<const SaatyValue> all();

  const Rational& value() const noexcept { return value_; }
  double to_double() const noexcept { return value_.to_double(); }
  SaatyValue reciprocal() const { return SaatyValue(value_.reciprocal()); }
  PrimeExponents exponents() const;

  // Verbal grade for the odd values 1,3,5,7,9 (and their reciprocals read
  // from the other side); empty for the intermediates 2,4,6,8.
  std::string_view label() const;

  friend bool operator==(const SaatyValue&, const SaatyValue&) = default;
  friend auto operator<=>(const SaatyValue& a, const SaatyValue& b) {
    return a.value_ <=> b.value_;
  }

 private:
  explicit SaatyValue(Rational r) : value_(r) {}
  Rational value_{1};
};

bool is_saaty(const Rational& r);

}  // namespace stepahp
