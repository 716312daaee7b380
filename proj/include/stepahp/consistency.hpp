#pragma once
// Priority derivation and cardinal/ordinal consistency for one matrix.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "stepahp/matrix.hpp"

namespace stepahp {

enum class PriorityMethod { kEigenvector, kGeometricMean };

std::string_view to_string(PriorityMethod m);
// Accepts "eigenvector" and "geometric-mean"; throws DomainError otherwise.
PriorityMethod parse_priority_method(std::string_view text);

struct PriorityVector {
  std::vector<double> weights;
  PriorityMethod method = PriorityMethod::kEigenvector;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;  // max-norm change between normalized iterates
  std::size_t max_iterations = 10000;
};

// Throws NumericalError (carrying the iteration count) if power iteration
// does not settle; there is no silent fallback to another method.
PriorityVector derive_priorities(const RealMatrix& m,
                                 PriorityMethod method = PriorityMethod::kEigenvector,
                                 const PowerIterationOptions& opts = {});
// Validates first (ValidationError on failure).
PriorityVector derive_priorities(const ComparisonMatrix& m,
                                 PriorityMethod method = PriorityMethod::kEigenvector,
                                 const PowerIterationOptions& opts = {});

// Principal eigenvalue estimate: mean over i of (A w)_i / w_i.
// Throws DomainError when some w_i <= 0 or sizes differ.
double lambda_max(const RealMatrix& m, const PriorityVector& w);
double lambda_max(const ComparisonMatrix& m, const PriorityVector& w);

// Tabulated mean CI of uniformly random reciprocal Saaty matrices of
// order n, for 1 <= n <= 10. RI(1) = RI(2) = 0.
double random_index(std::size_t n);
std::span<const double> random_index_table();  // index 0 holds n = 1

using IndexTriple = std::array<std::size_t, 3>;

// Ordered triples with w_i > w_j and w_j > w_k but w_i <= w_k, where ">"
// means larger by more than 1e-12.
std::vector<IndexTriple> ordinal_violations(const PriorityVector& w);
// Matrix-level form on the raw judgments: a_ij > 1 and a_jk > 1 but
// a_ik <= 1.
std::vector<IndexTriple> ordinal_violations(const ComparisonMatrix& m);
std::vector<IndexTriple> ordinal_violations(const RealMatrix& m);

inline constexpr double kAcceptableCr = 0.1;

struct ConsistencyReport {
  std::size_t n = 0;
  PriorityVector priorities;
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  // 0 with cr_defined == false when ri == 0 (n <= 2).
  double cr = 0.0;
  bool cr_defined = false;
  // Violations on the derived weights.
  std::vector<IndexTriple> ordinal_violations;
  // Violations on the raw judgments.
  std::vector<IndexTriple> judgment_violations;

  bool acceptable(double threshold = kAcceptableCr) const { return cr < threshold; }
};

// Always uses the eigenvector method.
ConsistencyReport consistency_report(const RealMatrix& m, const PowerIterationOptions& opts = {});
ConsistencyReport consistency_report(const ComparisonMatrix& m,
                                     const PowerIterationOptions& opts = {});

}  // namespace stepahp
