#pragma once
// Three-level decision hierarchy (goal, criteria, alternatives) and the
// synthesis of global priorities from local ones.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stepahp/consistency.hpp"
#include "stepahp/matrix.hpp"

namespace stepahp {

struct Goal {
  std::string id;
  std::string name;
  bool operator==(const Goal&) const = default;
};

struct Hierarchy {
  Goal goal;
  std::vector<std::string> criteria;
  std::vector<std::string> alternatives;

  // Throws ValidationError: fewer than 2 or more than 10 criteria or
  // alternatives, empty or duplicate identifiers.
  void validate() const;
  // Non-fatal advice, e.g. more than three alternatives.
  std::vector<std::string> warnings() const;

  bool operator==(const Hierarchy&) const = default;
};

inline constexpr std::size_t kAdvisedMaxAlternatives = 3;

// Judgments over one hierarchy: the criteria matrix (labels = criteria ids)
// and one alternatives matrix per criterion, in criteria order.
struct FullEvaluation {
  ComparisonMatrix criteria;
  std::vector<ComparisonMatrix> alternatives;

  // Throws ValidationError when shapes or labels disagree with h or any
  // matrix breaks its invariants. `owner` prefixes matrix names.
  void validate_against(const Hierarchy& h, const std::string& owner = {}) const;

  bool operator==(const FullEvaluation&) const = default;
};

// Floating-point evaluation; produced by group aggregation.
struct RealEvaluation {
  RealMatrix criteria;
  std::vector<RealMatrix> alternatives;

  bool operator==(const RealEvaluation&) const = default;
};

RealEvaluation to_real(const FullEvaluation& e);

// Matrix names used in diagnostics: "criteria", "alternatives/<criterion>".
std::string criteria_matrix_name();
std::string alternatives_matrix_name(const std::string& criterion);

struct RankedAlternative {
  std::string id;
  double priority = 0.0;
};

// Global priority of alternative k = sum_j criterion_weight[j] * utility[j][k].
// Sorted descending, ties kept in hierarchy order.
std::vector<RankedAlternative> synthesize_from_priorities(
    const Hierarchy& h, std::span<const double> criterion_weights,
    std::span<const std::vector<double>> utilities);

std::vector<RankedAlternative> synthesize_global(const Hierarchy& h, const FullEvaluation& e,
                                                 PriorityMethod method = PriorityMethod::kEigenvector);
std::vector<RankedAlternative> synthesize_global(const Hierarchy& h, const RealEvaluation& e,
                                                 PriorityMethod method = PriorityMethod::kEigenvector);

// The criteria matrix is the preliminary stage; alternative matrices are
// the final stage, where acceptability matters most.
enum class Stage { kPreliminary, kFinal };

struct MatrixConsistency {
  std::string matrix;
  Stage stage = Stage::kPreliminary;
  ConsistencyReport report;
};

struct EvaluationConsistency {
  std::vector<MatrixConsistency> matrices;  // criteria first
  double worst_cr = 0.0;
  std::size_t worst_index = 0;  // into matrices
  double worst_final_cr = 0.0;

  const MatrixConsistency& worst() const { return matrices.at(worst_index); }
  bool acceptable(double threshold = kAcceptableCr) const { return worst_cr < threshold; }
};

EvaluationConsistency evaluation_consistency(const FullEvaluation& e);
EvaluationConsistency evaluation_consistency(const RealEvaluation& e);

}  // namespace stepahp
