#include <array>

#include "stepahp/consistency.hpp"
#include "stepahp/errors.hpp"

namespace stepahp {

namespace {

// Mean CI of reciprocal matrices with upper cells drawn uniformly from the
// 17 Saaty values, n = 1..10. Generated by the Monte-Carlo oracle in
// tests/oracles/random_index_oracle.hpp (seed 20040517 + n, 100000 samples
// per order) and re-checked against it by the test suite.
constexpr std::array<double, kMaxItems> kRandomIndex = {
    0.0, 0.0, 0.5268, 0.8829, 1.1105, 1.2492, 1.3411, 1.4047, 1.4503, 1.4858,
};

}  // namespace

double random_index(std::size_t n) {
  if (n < 1 || n > kMaxItems) {
    throw DomainError("random index is tabulated for n in 1.." + std::to_string(kMaxItems) +
                      ", got " + std::to_string(n));
  }
  return kRandomIndex[n - 1];
}

std::span<const double> random_index_table() { return kRandomIndex; }

}  // namespace stepahp
