#include "stepahp/saaty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stepahp/errors.hpp"

namespace stepahp {

namespace {

const std::vector<SaatyValue>& grid() {
  static const std::vector<SaatyValue> values = [] {
    std::vector<SaatyValue> v;
    for (int g = 9; g >= 2; --g) v.push_back(SaatyValue::grade(g).reciprocal());
    for (int g = 1; g <= 9; ++g) v.push_back(SaatyValue::grade(g));
    return v;
  }();
  return values;
}

PrimeExponents factor(std::int64_t x) {
  PrimeExponents e{};
  for (std::size_t p = 0; p < kScalePrimes.size(); ++p) {
    while (x % kScalePrimes[p] == 0) {
      x /= kScalePrimes[p];
      ++e[p];
    }
  }
  return e;
}

}  // namespace

SaatyValue SaatyValue::grade(int g) {
  if (g < 1 || g > 9) throw DomainError("Saaty grade must be in 1..9, got " + std::to_string(g));
  return SaatyValue(Rational(g));
}

std::optional<SaatyValue> SaatyValue::from_rational(const Rational& r) {
  if (!is_saaty(r)) return std::nullopt;
  return SaatyValue(r);
}

SaatyValue SaatyValue::snap(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("cannot snap non-positive or non-finite value to the Saaty grid");
  }
  const double lx = std::log(x);
  SaatyValue best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& v : grid()) {
    const double lv = std::log(v.to_double());
    const double d = std::abs(lx - lv);
    if (d < best_dist || (d == best_dist && std::abs(lv) < std::abs(std::log(best.to_double())))) {
      best = v;
      best_dist = d;
    }
  }
  return best;
}

std::span<const SaatyValue> SaatyValue::all() { return grid(); }

PrimeExponents SaatyValue::exponents() const {
  PrimeExponents up = factor(value_.num());
  const PrimeExponents down = factor(value_.den());
  for (std::size_t p = 0; p < up.size(); ++p) up[p] -= down[p];
  return up;
}

std::string_view SaatyValue::label() const {
  const std::int64_t g = std::max(value_.num(), value_.den());
  switch (g) {
    case 1: return "equally important";
    case 3: return "moderately more important";
    case 5: return "strongly more important";
    case 7: return "very strongly more important";
    case 9: return "extremely more important";
    default: return {};
  }
}

bool is_saaty(const Rational& r) {
  if (r.num() <= 0) return false;
  const bool integer_grade = r.den() == 1 && r.num() <= 9;
  const bool reciprocal_grade = r.num() == 1 && r.den() >= 2 && r.den() <= 9;
  return integer_grade || reciprocal_grade;
}

}  // namespace stepahp
