#pragma once
// Step-wise group AHP session.
//
//   collecting --(all members submitted, advance)--> evaluate round
//   evaluate: group CR < threshold            -> converged
//             rounds used == group budget     -> budget-exhausted
//             otherwise target the most influential member(s) with
//             revision budget left            -> awaiting-revision
//             (none left                      -> budget-exhausted)
//   awaiting-revision --(targets resubmit, advance)--> evaluate round
//
// Every successful submit/advance is appended to an event log; replaying
// the log through a fresh session reproduces the state exactly.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stepahp/group.hpp"

namespace stepahp {

struct StopRule {
  double cr_threshold = kAcceptableCr;
  std::size_t max_group_iterations = 10;
  std::size_t max_per_member_revisions = 3;
  // Members asked to revise per round.
  std::size_t revisers_per_round = 1;

  // Throws DomainError unless threshold > 0 and every budget >= 1.
  void validate() const;
  bool operator==(const StopRule&) const = default;
};

enum class Phase { kCollecting, kAwaitingRevision, kConverged, kBudgetExhausted };
std::string_view to_string(Phase p);

struct IterationRecord {
  std::size_t round = 0;
  double group_cr_before = 0.0;
  InfluenceReport influence;
  // Empty on the closing record of a finished session.
  std::vector<std::string> targets;
  bool revised = false;
  double group_cr_after = 0.0;

  const std::string& target_member() const;  // first target or ""
};

struct TrajectoryPoint {
  std::size_t round = 0;
  double group_cr = 0.0;
  std::string target_member;
  bool operator==(const TrajectoryPoint&) const = default;
};

struct SubmitEvent {
  std::string member;
  FullEvaluation evaluation;
  bool operator==(const SubmitEvent&) const = default;
};
struct AdvanceEvent {
  bool operator==(const AdvanceEvent&) const = default;
};
using SessionEvent = std::variant<SubmitEvent, AdvanceEvent>;

// Replaces only the matrices present; the rest carry forward.
struct EvaluationPatch {
  std::optional<ComparisonMatrix> criteria;
  std::map<std::string, ComparisonMatrix> alternatives;  // keyed by criterion id
};

class Session {
 public:
  // Throws DomainError for < 2 members or a bad stop rule, ValidationError
  // for duplicate ids or an invalid hierarchy.
  static Session start(Hierarchy h, std::vector<DecisionMaker> members, StopRule rule = {});
  static Session replay(Hierarchy h, std::vector<DecisionMaker> members, StopRule rule,
                        const std::vector<SessionEvent>& events);

  // Validates before touching state; on any exception the session is
  // unchanged.
  void submit(const std::string& member, FullEvaluation evaluation);
  // Needs an earlier full submission from the member.
  void submit_patch(const std::string& member, const EvaluationPatch& patch);
  void advance();
  void apply(const SessionEvent& event);

  bool ready() const;
  // Members whose (re)submission the next advance still waits for.
  std::vector<std::string> pending_members() const;
  bool finished() const { return phase_ == Phase::kConverged || phase_ == Phase::kBudgetExhausted; }

  const Hierarchy& hierarchy() const noexcept { return hierarchy_; }
  const std::vector<DecisionMaker>& members() const noexcept { return members_; }
  const StopRule& stop_rule() const noexcept { return rule_; }
  Phase phase() const noexcept { return phase_; }
  const std::vector<std::string>& targets() const noexcept { return targets_; }
  const std::vector<IterationRecord>& log() const noexcept { return log_; }
  const std::vector<SessionEvent>& events() const noexcept { return events_; }
  std::size_t revisions(const std::string& member) const;

  bool has_judgments(const std::string& member) const;
  const FullEvaluation& judgments(const std::string& member) const;
  // Current judgment sets in member order; needs every member submitted.
  std::vector<JudgmentSet> judgment_sets() const;

 private:
  Session() = default;
  std::size_t index_of(const std::string& member) const;

  Hierarchy hierarchy_;
  std::vector<DecisionMaker> members_;
  StopRule rule_;
  Phase phase_ = Phase::kCollecting;
  std::vector<std::optional<FullEvaluation>> current_;
  std::vector<std::size_t> revision_count_;
  std::vector<std::string> targets_;
  std::vector<bool> revised_this_round_;
  std::vector<IterationRecord> log_;
  std::vector<SessionEvent> events_;
};

// (round, group CR at the start of the round, first target) per record.
std::vector<TrajectoryPoint> session_trajectory(const Session& s);

// CR of the judgments currently held: the last record's group_cr_after.
std::optional<double> final_group_cr(const Session& s);

}  // namespace stepahp
