#include "stepahp/protocol.hpp"

#include <algorithm>

#include "stepahp/errors.hpp"

namespace stepahp {

void StopRule::validate() const {
  if (!(cr_threshold > 0.0)) throw DomainError("stop rule: cr_threshold must be > 0");
  if (max_group_iterations < 1) throw DomainError("stop rule: max_group_iterations must be >= 1");
  if (max_per_member_revisions < 1) throw DomainError("stop rule: max_per_member_revisions must be >= 1");
  if (revisers_per_round < 1) throw DomainError("stop rule: revisers_per_round must be >= 1");
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kCollecting: return "collecting";
    case Phase::kAwaitingRevision: return "awaiting-revision";
    case Phase::kConverged: return "converged";
    case Phase::kBudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

const std::string& IterationRecord::target_member() const {
  static const std::string kNone;
  return targets.empty() ? kNone : targets.front();
}

Session Session::start(Hierarchy h, std::vector<DecisionMaker> members, StopRule rule) {
  h.validate();
  if (members.size() < 2) throw DomainError("a group session needs at least two members");
  validate_members(members);
  rule.validate();
  Session s;
  s.hierarchy_ = std::move(h);
  s.members_ = std::move(members);
  s.rule_ = rule;
  s.current_.resize(s.members_.size());
  s.revision_count_.assign(s.members_.size(), 0);
  s.revised_this_round_.assign(s.members_.size(), false);
  return s;
}

Session Session::replay(Hierarchy h, std::vector<DecisionMaker> members, StopRule rule,
                        const std::vector<SessionEvent>& events) {
  Session s = start(std::move(h), std::move(members), rule);
  for (const auto& e : events) s.apply(e);
  return s;
}

std::size_t Session::index_of(const std::string& member) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].id == member) return i;
  }
  throw DomainError("unknown member '" + member + "'");
}

void Session::submit(const std::string& member, FullEvaluation evaluation) {
  const std::size_t idx = index_of(member);
  if (finished()) throw ProtocolError("session has finished (" + std::string(to_string(phase_)) + ")");
  if (phase_ == Phase::kAwaitingRevision &&
      std::find(targets_.begin(), targets_.end(), member) == targets_.end()) {
    throw ProtocolError("member '" + member + "' is not asked to revise this round", targets_);
  }
  evaluation.validate_against(hierarchy_, member);

  events_.push_back(SubmitEvent{member, evaluation});
  current_[idx] = std::move(evaluation);
  if (phase_ == Phase::kAwaitingRevision) revised_this_round_[idx] = true;
}

void Session::submit_patch(const std::string& member, const EvaluationPatch& patch) {
  const std::size_t idx = index_of(member);
  if (!current_[idx]) {
    throw ProtocolError("member '" + member + "' has no earlier judgments to patch", {member});
  }
  FullEvaluation merged = *current_[idx];
  if (patch.criteria) merged.criteria = *patch.criteria;
  for (const auto& [criterion, matrix] : patch.alternatives) {
    const auto it = std::find(hierarchy_.criteria.begin(), hierarchy_.criteria.end(), criterion);
    if (it == hierarchy_.criteria.end()) {
      throw ValidationError("patch names unknown criterion '" + criterion + "'");
    }
    merged.alternatives[static_cast<std::size_t>(it - hierarchy_.criteria.begin())] = matrix;
  }
  submit(member, std::move(merged));
}

std::vector<std::string> Session::pending_members() const {
  std::vector<std::string> out;
  if (phase_ == Phase::kCollecting) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (!current_[i]) out.push_back(members_[i].id);
    }
  } else if (phase_ == Phase::kAwaitingRevision) {
    for (const auto& t : targets_) {
      if (!revised_this_round_[index_of(t)]) out.push_back(t);
    }
  }
  return out;
}

bool Session::ready() const { return !finished() && pending_members().empty(); }

void Session::advance() {
  if (finished()) throw ProtocolError("session has finished (" + std::string(to_string(phase_)) + ")");
  if (auto pending = pending_members(); !pending.empty()) {
    std::string list;
    for (const auto& p : pending) list += (list.empty() ? "" : ", ") + p;
    throw ProtocolError("waiting for judgments from: " + list, std::move(pending));
  }

  const std::vector<JudgmentSet> sets = judgment_sets();
  InfluenceReport report = influence_ranking(hierarchy_, sets);
  const double cr = report.group_cr;

  // Everything below is non-throwing, so a failed evaluation leaves the
  // session untouched.
  if (phase_ == Phase::kAwaitingRevision) {
    IterationRecord& open = log_.back();
    open.revised = true;
    open.group_cr_after = cr;
    for (const auto& t : targets_) ++revision_count_[index_of(t)];
  }
  targets_.clear();
  std::fill(revised_this_round_.begin(), revised_this_round_.end(), false);
  events_.push_back(AdvanceEvent{});

  auto close_with = [&](Phase terminal) {
    phase_ = terminal;
    if (log_.size() < rule_.max_group_iterations) {
      log_.push_back({log_.size() + 1, cr, std::move(report), {}, false, cr});
    }
  };

  if (cr < rule_.cr_threshold) {
    close_with(Phase::kConverged);
    return;
  }
  if (log_.size() >= rule_.max_group_iterations) {
    phase_ = Phase::kBudgetExhausted;
    return;
  }
  std::vector<std::string> chosen;
  for (const auto& id : influence_order(report)) {
    if (chosen.size() == rule_.revisers_per_round) break;
    if (revision_count_[index_of(id)] < rule_.max_per_member_revisions) chosen.push_back(id);
  }
  if (chosen.empty()) {
    close_with(Phase::kBudgetExhausted);
    return;
  }
  targets_ = chosen;
  log_.push_back({log_.size() + 1, cr, std::move(report), std::move(chosen), false, cr});
  phase_ = Phase::kAwaitingRevision;
}

void Session::apply(const SessionEvent& event) {
  if (const auto* submit_event = std::get_if<SubmitEvent>(&event)) {
    submit(submit_event->member, submit_event->evaluation);
  } else {
    advance();
  }
}

std::size_t Session::revisions(const std::string& member) const {
  return revision_count_[index_of(member)];
}

bool Session::has_judgments(const std::string& member) const {
  return current_[index_of(member)].has_value();
}

const FullEvaluation& Session::judgments(const std::string& member) const {
  const auto& slot = current_[index_of(member)];
  if (!slot) throw ProtocolError("member '" + member + "' has not submitted", {member});
  return *slot;
}

std::vector<JudgmentSet> Session::judgment_sets() const {
  std::vector<JudgmentSet> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back({m.id, judgments(m.id)});
  return out;
}

std::vector<TrajectoryPoint> session_trajectory(const Session& s) {
  std::vector<TrajectoryPoint> out;
  out.reserve(s.log().size());
  for (const auto& r : s.log()) out.push_back({r.round, r.group_cr_before, r.target_member()});
  return out;
}

std::optional<double> final_group_cr(const Session& s) {
  if (s.log().empty()) return std::nullopt;
  return s.log().back().group_cr_after;
}

}  // namespace stepahp
