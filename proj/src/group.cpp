#include "stepahp/group.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include "stepahp/errors.hpp"

namespace stepahp {

namespace {

// exp(sum_p e_p / k * ln p), exact when every exponent divides by k.
double mean_of_exponents(const PrimeExponents& sums, int k) {
  bool exact = true;
  for (int e : sums) exact = exact && e % k == 0;
  if (exact) {
    std::int64_t num = 1;
    std::int64_t den = 1;
    for (std::size_t p = 0; p < sums.size(); ++p) {
      const int e = sums[p] / k;
      for (int r = 0; r < std::abs(e); ++r) (e > 0 ? num : den) *= kScalePrimes[p];
    }
    return Rational(num, den).to_double();
  }
  double log_value = 0.0;
  for (std::size_t p = 0; p < sums.size(); ++p) {
    log_value += static_cast<double>(sums[p]) / k * std::log(static_cast<double>(kScalePrimes[p]));
  }
  return std::exp(log_value);
}

std::vector<const ComparisonMatrix*> criteria_of(std::span<const JudgmentSet> sets) {
  std::vector<const ComparisonMatrix*> out;
  for (const auto& s : sets) out.push_back(&s.evaluation.criteria);
  return out;
}

std::vector<const ComparisonMatrix*> alternatives_of(std::span<const JudgmentSet> sets,
                                                     std::size_t k) {
  std::vector<const ComparisonMatrix*> out;
  for (const auto& s : sets) out.push_back(&s.evaluation.alternatives[k]);
  return out;
}

RealEvaluation aggregate_unchecked(std::span<const JudgmentSet> sets) {
  RealEvaluation out{geometric_mean(criteria_of(sets)), {}};
  const std::size_t c = sets.front().evaluation.alternatives.size();
  for (std::size_t k = 0; k < c; ++k) out.alternatives.push_back(geometric_mean(alternatives_of(sets, k)));
  return out;
}

void check_sets(const Hierarchy& h, std::span<const JudgmentSet> sets) {
  if (sets.empty()) throw DomainError("aggregation needs at least one judgment set");
  std::set<std::string> owners;
  for (const auto& s : sets) {
    if (!owners.insert(s.owner).second) {
      throw ValidationError("duplicate judgment set for member '" + s.owner + "'");
    }
    s.evaluation.validate_against(h, s.owner);
  }
}

}  // namespace

void validate_members(std::span<const DecisionMaker> members) {
  std::set<std::string> ids;
  std::vector<CellDiagnostic> problems;
  for (const auto& m : members) {
    if (m.id.empty()) problems.push_back({"members", 0, 0, "empty member id"});
    else if (!ids.insert(m.id).second) problems.push_back({"members", 0, 0, "duplicate member id '" + m.id + "'"});
  }
  if (!problems.empty()) throw ValidationError("invalid member list", std::move(problems));
}

RealMatrix geometric_mean(std::span<const ComparisonMatrix* const> matrices) {
  if (matrices.empty()) throw DomainError("geometric mean of no matrices");
  const ComparisonMatrix& first = *matrices.front();
  const std::size_t n = first.size();
  const int k = static_cast<int>(matrices.size());
  std::vector<double> data(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PrimeExponents sums{};
      for (const ComparisonMatrix* m : matrices) {
        if (m->size() != n) throw StructuralError("cannot aggregate matrices of different order");
        const PrimeExponents e = m->saaty(i, j).exponents();
        for (std::size_t p = 0; p < sums.size(); ++p) sums[p] += e[p];
      }
      data[i * n + j] = mean_of_exponents(sums, k);
      for (int& e : sums) e = -e;
      data[j * n + i] = mean_of_exponents(sums, k);
    }
  }
  return RealMatrix(first.labels(), std::move(data));
}

RealEvaluation aggregate_judgments(const Hierarchy& h, std::span<const JudgmentSet> sets) {
  check_sets(h, sets);
  return aggregate_unchecked(sets);
}

EvaluationConsistency group_consistency(const Hierarchy& h, std::span<const JudgmentSet> sets) {
  return evaluation_consistency(aggregate_judgments(h, sets));
}

const MemberInfluence& InfluenceReport::member(const std::string& id) const {
  for (const auto& m : per_member) {
    if (m.member == id) return m;
  }
  throw DomainError("no influence entry for member '" + id + "'");
}

std::vector<std::string> influence_order(const InfluenceReport& report) {
  std::vector<const MemberInfluence*> sorted;
  for (const auto& m : report.per_member) sorted.push_back(&m);
  std::sort(sorted.begin(), sorted.end(), [](const MemberInfluence* a, const MemberInfluence* b) {
    if (a->influence != b->influence) return a->influence > b->influence;
    return a->member < b->member;
  });
  std::vector<std::string> out;
  for (const auto* m : sorted) out.push_back(m->member);
  return out;
}

InfluenceReport influence_ranking(const Hierarchy& h, std::span<const JudgmentSet> sets) {
  if (sets.size() < 2) throw DomainError("leave-one-out influence needs at least two members");
  check_sets(h, sets);

  const EvaluationConsistency group = evaluation_consistency(aggregate_unchecked(sets));

  std::vector<std::future<MemberInfluence>> jobs;
  jobs.reserve(sets.size());
  for (std::size_t d = 0; d < sets.size(); ++d) {
    jobs.push_back(std::async(std::launch::async, [&, d] {
      std::vector<JudgmentSet> others;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i != d) others.push_back(sets[i]);
      }
      const EvaluationConsistency loo = evaluation_consistency(aggregate_unchecked(others));
      MemberInfluence mi;
      mi.member = sets[d].owner;
      mi.own_cr = evaluation_consistency(sets[d].evaluation).worst_cr;
      mi.leave_one_out_cr = loo.worst_cr;
      mi.influence = group.worst_cr - loo.worst_cr;
      for (std::size_t m = 0; m < group.matrices.size(); ++m) {
        mi.matrix_influence.push_back(group.matrices[m].report.cr - loo.matrices[m].report.cr);
      }
      return mi;
    }));
  }

  InfluenceReport report;
  report.group_cr = group.worst_cr;
  for (auto& job : jobs) report.per_member.push_back(job.get());
  report.most_influential = influence_order(report).front();
  return report;
}

}  // namespace stepahp
