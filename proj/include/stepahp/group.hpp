#pragma once
// Group judgments: geometric-mean aggregation, group consistency and the
// leave-one-out influence of each decision maker on it.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stepahp/hierarchy.hpp"

namespace stepahp {

// Members always carry equal weight (1 / group size).
struct DecisionMaker {
  std::string id;
  std::string name;
  bool operator==(const DecisionMaker&) const = default;
};

// Throws ValidationError on empty or duplicate ids.
void validate_members(std::span<const DecisionMaker> members);

struct JudgmentSet {
  std::string owner;
  FullEvaluation evaluation;
  bool operator==(const JudgmentSet&) const = default;
};

// Cell-wise geometric mean of one matrix across members. Sums prime
// exponents exactly, so the result does not depend on member order and is
// exact whenever the mean lands on a rational value.
RealMatrix geometric_mean(std::span<const ComparisonMatrix* const> matrices);

// Validates every set against h (naming member and matrix on failure) and
// aggregates them. Throws DomainError on an empty list.
RealEvaluation aggregate_judgments(const Hierarchy& h, std::span<const JudgmentSet> sets);

// evaluation_consistency of the aggregate; worst_cr is the group CR.
EvaluationConsistency group_consistency(const Hierarchy& h, std::span<const JudgmentSet> sets);

struct MemberInfluence {
  std::string member;
  double own_cr = 0.0;            // worst CR over the member's own matrices
  double leave_one_out_cr = 0.0;  // group CR without this member
  double influence = 0.0;         // group_cr - leave_one_out_cr
  // Per-matrix breakdown, same order as EvaluationConsistency::matrices:
  // aggregate CR minus leave-one-out CR of that matrix.
  std::vector<double> matrix_influence;
};

struct InfluenceReport {
  double group_cr = 0.0;
  std::vector<MemberInfluence> per_member;  // input order
  std::string most_influential;

  const MemberInfluence& member(const std::string& id) const;
};

// Members ordered by decreasing influence, ties by ascending id.
std::vector<std::string> influence_order(const InfluenceReport& report);

// Needs at least two members (DomainError otherwise). Leave-one-out
// aggregates are computed independently and may run concurrently.
InfluenceReport influence_ranking(const Hierarchy& h, std::span<const JudgmentSet> sets);

}  // namespace stepahp
