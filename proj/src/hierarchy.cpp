#include "stepahp/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stepahp/errors.hpp"

namespace stepahp {

namespace {

std::string prefixed(const std::string& owner, const std::string& name) {
  return owner.empty() ? name : owner + "/" + name;
}

void check_level(const std::vector<std::string>& ids, const std::string& level,
                 std::vector<CellDiagnostic>& problems) {
  if (ids.size() < kMinItems || ids.size() > kMaxItems) {
    problems.push_back({level, 0, 0,
                        "needs " + std::to_string(kMinItems) + ".." + std::to_string(kMaxItems) +
                            " items, has " + std::to_string(ids.size())});
  }
}

std::vector<double> utilities_of(const RealMatrix& m, PriorityMethod method) {
  return derive_priorities(m, method).weights;
}

EvaluationConsistency summarize(std::vector<MatrixConsistency> matrices) {
  EvaluationConsistency out;
  out.matrices = std::move(matrices);
  for (std::size_t i = 0; i < out.matrices.size(); ++i) {
    const double cr = out.matrices[i].report.cr;
    if (cr > out.worst_cr) {
      out.worst_cr = cr;
      out.worst_index = i;
    }
    if (out.matrices[i].stage == Stage::kFinal) out.worst_final_cr = std::max(out.worst_final_cr, cr);
  }
  return out;
}

}  // namespace

void Hierarchy::validate() const {
  std::vector<CellDiagnostic> problems;
  check_level(criteria, "criteria", problems);
  check_level(alternatives, "alternatives", problems);
  std::set<std::string> seen;
  auto check_id = [&](const std::string& id, const std::string& where) {
    if (id.empty()) problems.push_back({where, 0, 0, "empty identifier"});
    else if (!seen.insert(id).second) problems.push_back({where, 0, 0, "duplicate identifier '" + id + "'"});
  };
  check_id(goal.id, "goal");
  for (const auto& c : criteria) check_id(c, "criteria");
  for (const auto& a : alternatives) check_id(a, "alternatives");
  if (!problems.empty()) throw ValidationError("invalid hierarchy", std::move(problems));
}

std::vector<std::string> Hierarchy::warnings() const {
  std::vector<std::string> out;
  if (alternatives.size() > kAdvisedMaxAlternatives) {
    out.push_back("hierarchy has " + std::to_string(alternatives.size()) +
                  " alternatives; coherent judgments are far easier to obtain with at most " +
                  std::to_string(kAdvisedMaxAlternatives));
  }
  return out;
}

std::string criteria_matrix_name() { return "criteria"; }
std::string alternatives_matrix_name(const std::string& criterion) {
  return "alternatives/" + criterion;
}

void FullEvaluation::validate_against(const Hierarchy& h, const std::string& owner) const {
  std::vector<CellDiagnostic> problems;
  const std::string crit_name = prefixed(owner, criteria_matrix_name());
  if (criteria.labels() != h.criteria) {
    problems.push_back({crit_name, 0, 0, "labels do not match the hierarchy criteria"});
  } else {
    auto cells = criteria.validate(crit_name);
    problems.insert(problems.end(), cells.begin(), cells.end());
  }
  if (alternatives.size() != h.criteria.size()) {
    problems.push_back({prefixed(owner, "alternatives"), 0, 0,
                        "expected " + std::to_string(h.criteria.size()) + " matrices, got " +
                            std::to_string(alternatives.size())});
  } else {
    for (std::size_t k = 0; k < alternatives.size(); ++k) {
      const std::string name = prefixed(owner, alternatives_matrix_name(h.criteria[k]));
      if (alternatives[k].labels() != h.alternatives) {
        problems.push_back({name, 0, 0, "labels do not match the hierarchy alternatives"});
        continue;
      }
      auto cells = alternatives[k].validate(name);
      problems.insert(problems.end(), cells.begin(), cells.end());
    }
  }
  if (!problems.empty()) {
    throw ValidationError(owner.empty() ? "invalid evaluation" : "invalid evaluation from '" + owner + "'",
                          std::move(problems));
  }
}

RealEvaluation to_real(const FullEvaluation& e) {
  RealEvaluation out{e.criteria.to_real(), {}};
  out.alternatives.reserve(e.alternatives.size());
  for (const auto& m : e.alternatives) out.alternatives.push_back(m.to_real());
  return out;
}

std::vector<RankedAlternative> synthesize_from_priorities(
    const Hierarchy& h, std::span<const double> criterion_weights,
    std::span<const std::vector<double>> utilities) {
  if (criterion_weights.size() != h.criteria.size() || utilities.size() != h.criteria.size()) {
    throw DomainError("synthesis needs one weight and one utility vector per criterion");
  }
  const std::size_t a = h.alternatives.size();
  std::vector<double> global(a, 0.0);
  for (std::size_t j = 0; j < criterion_weights.size(); ++j) {
    if (utilities[j].size() != a) throw DomainError("utility vector size does not match alternatives");
    for (std::size_t k = 0; k < a; ++k) global[k] += criterion_weights[j] * utilities[j][k];
  }
  std::vector<std::size_t> order(a);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return global[x] > global[y]; });
  std::vector<RankedAlternative> out;
  out.reserve(a);
  for (std::size_t k : order) out.push_back({h.alternatives[k], global[k]});
  return out;
}

std::vector<RankedAlternative> synthesize_global(const Hierarchy& h, const FullEvaluation& e,
                                                 PriorityMethod method) {
  e.validate_against(h);
  return synthesize_global(h, to_real(e), method);
}

std::vector<RankedAlternative> synthesize_global(const Hierarchy& h, const RealEvaluation& e,
                                                 PriorityMethod method) {
  if (e.alternatives.size() != h.criteria.size()) {
    throw ValidationError("evaluation has " + std::to_string(e.alternatives.size()) +
                          " alternative matrices for " + std::to_string(h.criteria.size()) +
                          " criteria");
  }
  const std::vector<double> weights = utilities_of(e.criteria, method);
  std::vector<std::vector<double>> utilities;
  utilities.reserve(e.alternatives.size());
  for (const auto& m : e.alternatives) utilities.push_back(utilities_of(m, method));
  return synthesize_from_priorities(h, weights, utilities);
}

EvaluationConsistency evaluation_consistency(const FullEvaluation& e) {
  e.criteria.require_valid(criteria_matrix_name());
  std::vector<MatrixConsistency> matrices;
  matrices.push_back({criteria_matrix_name(), Stage::kPreliminary, consistency_report(e.criteria)});
  for (std::size_t k = 0; k < e.alternatives.size(); ++k) {
    const std::string name = alternatives_matrix_name(e.criteria.labels().at(k));
    e.alternatives[k].require_valid(name);
    matrices.push_back({name, Stage::kFinal, consistency_report(e.alternatives[k])});
  }
  return summarize(std::move(matrices));
}

EvaluationConsistency evaluation_consistency(const RealEvaluation& e) {
  std::vector<MatrixConsistency> matrices;
  matrices.push_back({criteria_matrix_name(), Stage::kPreliminary, consistency_report(e.criteria)});
  for (std::size_t k = 0; k < e.alternatives.size(); ++k) {
    matrices.push_back({alternatives_matrix_name(e.criteria.labels().at(k)), Stage::kFinal,
                        consistency_report(e.alternatives[k])});
  }
  return summarize(std::move(matrices));
}

}  // namespace stepahp
