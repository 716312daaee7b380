#include "stepahp/io.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <regex>
#include <set>
#include <sstream>

#include "stepahp/errors.hpp"

namespace stepahp::io {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<DocumentKind, std::string_view>, 5> kKindNames = {{
    {DocumentKind::kHierarchy, "hierarchy"},
    {DocumentKind::kJudgmentSet, "judgment-set"},
    {DocumentKind::kSession, "session"},
    {DocumentKind::kSimulationConfig, "simulation-config"},
    {DocumentKind::kTrajectory, "trajectory"},
}};

// ---- strict field access ---------------------------------------------------

void require_object(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw FormatError(ctx + ": expected an object");
}

void check_keys(const json& j, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional, const std::string& ctx) {
  require_object(j, ctx);
  for (auto key : required) {
    if (!j.contains(std::string(key))) throw FormatError(ctx + ": missing field '" + std::string(key) + "'");
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || k == key;
    for (auto k : optional) known = known || k == key;
    if (!known) throw FormatError(ctx + ": unknown field '" + key + "'");
  }
}

const json& at(const json& j, const char* key) { return j.at(key); }

std::string get_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) throw FormatError(ctx + ": expected a string");
  return j.get<std::string>();
}

std::size_t get_size(const json& j, const std::string& ctx) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::size_t>();
  throw FormatError(ctx + ": expected a non-negative integer");
}

std::uint64_t get_u64(const json& j, const std::string& ctx) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    return j.get<std::uint64_t>();
  }
  throw FormatError(ctx + ": expected a non-negative integer");
}

double get_double(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw FormatError(ctx + ": expected a number");
  return j.get<double>();
}

const json& get_array(const json& j, const std::string& ctx) {
  if (!j.is_array()) throw FormatError(ctx + ": expected an array");
  return j;
}

std::vector<std::string> get_strings(const json& j, const std::string& ctx) {
  std::vector<std::string> out;
  for (const auto& v : get_array(j, ctx)) out.push_back(get_string(v, ctx));
  return out;
}

std::vector<double> get_doubles(const json& j, const std::string& ctx) {
  std::vector<double> out;
  for (const auto& v : get_array(j, ctx)) out.push_back(get_double(v, ctx));
  return out;
}

std::string joined(const std::string& owner, const std::string& name) {
  return owner.empty() ? name : owner + "/" + name;
}

// ---- payload codecs --------------------------------------------------------

json matrix_profile_to_json(const MatrixProfile& p) {
  return {{"weights", p.weights}, {"bias", p.bias}};
}

MatrixProfile matrix_profile_from_json(const json& j, const std::string& ctx) {
  check_keys(j, {"weights", "bias"}, {}, ctx);
  MatrixProfile p;
  p.weights = get_doubles(at(j, "weights"), ctx + ".weights");
  for (const auto& row : get_array(at(j, "bias"), ctx + ".bias")) {
    p.bias.push_back(get_doubles(row, ctx + ".bias"));
  }
  return p;
}

json agent_to_json(const AgentProfile& a) {
  json alts = json::array();
  for (const auto& p : a.alternatives) alts.push_back(matrix_profile_to_json(p));
  return {{"id", a.id},
          {"criteria", matrix_profile_to_json(a.criteria)},
          {"alternatives", alts},
          {"noise_level", a.noise_level},
          {"compliance", a.compliance}};
}

AgentProfile agent_from_json(const json& j, const std::string& ctx) {
  check_keys(j, {"id", "criteria", "alternatives", "noise_level", "compliance"}, {}, ctx);
  AgentProfile a;
  a.id = get_string(at(j, "id"), ctx + ".id");
  a.criteria = matrix_profile_from_json(at(j, "criteria"), ctx + ".criteria");
  for (const auto& p : get_array(at(j, "alternatives"), ctx + ".alternatives")) {
    a.alternatives.push_back(matrix_profile_from_json(p, ctx + ".alternatives"));
  }
  a.noise_level = get_double(at(j, "noise_level"), ctx + ".noise_level");
  a.compliance = get_double(at(j, "compliance"), ctx + ".compliance");
  return a;
}

json simulation_to_json(const SimulationConfig& c) {
  json agents = json::array();
  for (const auto& a : c.agents) agents.push_back(agent_to_json(a));
  return {{"criteria", c.criteria},     {"alternatives", c.alternatives},
          {"agents", agents},           {"stop_rule", stop_rule_to_json(c.stop_rule)},
          {"seed", c.seed},             {"replications", c.replications}};
}

SimulationConfig simulation_from_json(const json& j) {
  const std::string ctx = "simulation-config";
  check_keys(j, {"criteria", "alternatives", "agents", "stop_rule", "seed", "replications"}, {}, ctx);
  SimulationConfig c;
  c.criteria = get_size(at(j, "criteria"), ctx + ".criteria");
  c.alternatives = get_size(at(j, "alternatives"), ctx + ".alternatives");
  for (const auto& a : get_array(at(j, "agents"), ctx + ".agents")) {
    c.agents.push_back(agent_from_json(a, ctx + ".agents"));
  }
  c.stop_rule = stop_rule_from_json(at(j, "stop_rule"));
  c.seed = get_u64(at(j, "seed"), ctx + ".seed");
  c.replications = get_size(at(j, "replications"), ctx + ".replications");
  return c;
}

json trajectory_to_json(const TrajectoryDocument& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"replication", r.replication},
                    {"round", r.round},
                    {"group_cr", r.group_cr},
                    {"target_member", r.target_member}});
  }
  json summary = json::array();
  for (const auto& s : t.summary) {
    summary.push_back({{"round", s.round}, {"mean_cr", s.mean_cr}, {"replications", s.replications}});
  }
  return {{"rows", rows}, {"summary", summary}};
}

void check_trajectory(const TrajectoryDocument& t) {
  std::vector<CellDiagnostic> problems;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].round < 1) problems.push_back({"rows", i, 0, "round must be >= 1"});
    if (!(t.rows[i].group_cr >= 0.0) || !std::isfinite(t.rows[i].group_cr)) {
      problems.push_back({"rows", i, 0, "group_cr must be finite and >= 0"});
    }
  }
  for (std::size_t i = 0; i < t.summary.size(); ++i) {
    if (t.summary[i].round != i + 1) problems.push_back({"summary", i, 0, "rounds must run 1, 2, ..."});
  }
  if (!problems.empty()) throw ValidationError("invalid trajectory", std::move(problems));
}

TrajectoryDocument trajectory_from_json(const json& j) {
  const std::string ctx = "trajectory";
  check_keys(j, {"rows", "summary"}, {}, ctx);
  TrajectoryDocument t;
  for (const auto& r : get_array(at(j, "rows"), ctx + ".rows")) {
    check_keys(r, {"replication", "round", "group_cr", "target_member"}, {}, ctx + ".rows");
    t.rows.push_back({get_size(at(r, "replication"), ctx), get_size(at(r, "round"), ctx),
                      get_double(at(r, "group_cr"), ctx), get_string(at(r, "target_member"), ctx)});
  }
  for (const auto& s : get_array(at(j, "summary"), ctx + ".summary")) {
    check_keys(s, {"round", "mean_cr", "replications"}, {}, ctx + ".summary");
    t.summary.push_back({get_size(at(s, "round"), ctx), get_double(at(s, "mean_cr"), ctx),
                         get_size(at(s, "replications"), ctx)});
  }
  check_trajectory(t);
  return t;
}

json judgment_set_to_json(const JudgmentSet& s) {
  json j = evaluation_to_json(s.evaluation);
  j["owner"] = s.owner;
  return j;
}

void check_standalone(const JudgmentSet& s) {
  const FullEvaluation& e = s.evaluation;
  Hierarchy implied{{"goal", ""}, e.criteria.labels(),
                    e.alternatives.empty() ? std::vector<std::string>{} : e.alternatives.front().labels()};
  std::vector<CellDiagnostic> problems = e.criteria.validate(joined(s.owner, criteria_matrix_name()));
  std::set<std::string> ids;
  for (const auto& level : {implied.criteria, implied.alternatives}) {
    for (const auto& id : level) {
      if (id.empty() || !ids.insert(id).second) {
        problems.push_back({joined(s.owner, "labels"), 0, 0, "empty or duplicate label '" + id + "'"});
      }
    }
  }
  if (s.owner.empty()) problems.push_back({"owner", 0, 0, "owner must not be empty"});
  if (e.alternatives.size() != e.criteria.size()) {
    problems.push_back({joined(s.owner, "alternatives"), 0, 0, "need one matrix per criterion"});
  }
  if (!problems.empty()) throw ValidationError("invalid judgment set", std::move(problems));
  e.validate_against(implied, s.owner);
}

JudgmentSet judgment_set_from_json(const json& j) {
  check_keys(j, {"owner", "criteria", "alternatives"}, {}, "judgment-set");
  JudgmentSet s;
  s.owner = get_string(at(j, "owner"), "judgment-set.owner");
  json rest = j;
  rest.erase("owner");
  s.evaluation = evaluation_from_json(rest, s.owner);
  check_standalone(s);
  return s;
}

json event_to_json(const SessionEvent& e) {
  if (const auto* s = std::get_if<SubmitEvent>(&e)) {
    return {{"type", "submit"}, {"member", s->member}, {"evaluation", evaluation_to_json(s->evaluation)}};
  }
  return {{"type", "advance"}};
}

SessionEvent event_from_json(const json& j) {
  const std::string ctx = "session.events";
  require_object(j, ctx);
  if (!j.contains("type")) throw FormatError(ctx + ": missing field 'type'");
  const std::string type = get_string(at(j, "type"), ctx + ".type");
  if (type == "advance") {
    check_keys(j, {"type"}, {}, ctx);
    return AdvanceEvent{};
  }
  if (type == "submit") {
    check_keys(j, {"type", "member", "evaluation"}, {}, ctx);
    const std::string member = get_string(at(j, "member"), ctx + ".member");
    return SubmitEvent{member, evaluation_from_json(at(j, "evaluation"), member)};
  }
  throw FormatError(ctx + ": unknown event type '" + type + "'");
}

json session_to_json(const Session& s) {
  json events = json::array();
  for (const auto& e : s.events()) events.push_back(event_to_json(e));
  return {{"hierarchy", hierarchy_to_json(s.hierarchy())},
          {"members", members_to_json(s.members())},
          {"stop_rule", stop_rule_to_json(s.stop_rule())},
          {"events", events},
          {"phase", std::string(to_string(s.phase()))},
          {"targets", s.targets()},
          {"log", log_to_json(s.log())}};
}

Session session_from_json(const json& j) {
  const std::string ctx = "session";
  check_keys(j, {"hierarchy", "members", "stop_rule", "events", "phase", "targets", "log"}, {}, ctx);
  Hierarchy h = hierarchy_from_json(at(j, "hierarchy"));
  std::vector<DecisionMaker> members = members_from_json(at(j, "members"));
  const StopRule rule = stop_rule_from_json(at(j, "stop_rule"));
  std::vector<SessionEvent> events;
  for (const auto& e : get_array(at(j, "events"), ctx + ".events")) events.push_back(event_from_json(e));
  get_string(at(j, "phase"), ctx + ".phase");
  get_strings(at(j, "targets"), ctx + ".targets");
  get_array(at(j, "log"), ctx + ".log");

  Session s = [&] {
    try {
      return Session::replay(std::move(h), std::move(members), rule, events);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(std::string("session event log does not replay: ") + e.what());
    }
  }();
  if (session_to_json(s) != j) {
    throw ValidationError("session state recorded in the file differs from its replayed event log");
  }
  return s;
}

}  // namespace

std::string_view to_string(DocumentKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

DocumentKind kind_of(const Document& d) {
  return static_cast<DocumentKind>(d.index());
}

json matrix_to_json(const ComparisonMatrix& m) {
  json entries = json::array();
  for (const auto& row : m.entries()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.to_string());
    entries.push_back(r);
  }
  return {{"labels", m.labels()}, {"entries", entries}};
}

ComparisonMatrix matrix_from_json(const json& j, const std::string& name) {
  check_keys(j, {"labels", "entries"}, {}, name);
  std::vector<std::string> labels = get_strings(at(j, "labels"), name + ".labels");
  std::vector<std::vector<Rational>> entries;
  const json& rows = get_array(at(j, "entries"), name + ".entries");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Rational> row;
    const json& cells = get_array(rows[i], name + ".entries");
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::string where = name + "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
      if (!cells[k].is_string()) {
        throw FormatError(where + ": entries must be rational strings \"p/q\", got " + cells[k].dump());
      }
      auto r = Rational::parse(cells[k].get<std::string>());
      if (!r) {
        throw FormatError(where + ": '" + cells[k].get<std::string>() +
                          "' is not an exact rational in lowest terms \"p/q\"");
      }
      row.push_back(*r);
    }
    entries.push_back(std::move(row));
  }
  try {
    ComparisonMatrix m(std::move(labels), std::move(entries));
    m.require_valid(name);
    return m;
  } catch (const StructuralError& e) {
    throw ValidationError(name + ": " + e.what(), {{name, 0, 0, e.what()}});
  }
}

json hierarchy_to_json(const Hierarchy& h) {
  return {{"goal", {{"id", h.goal.id}, {"name", h.goal.name}}},
          {"criteria", h.criteria},
          {"alternatives", h.alternatives}};
}

Hierarchy hierarchy_from_json(const json& j) {
  check_keys(j, {"goal", "criteria", "alternatives"}, {}, "hierarchy");
  const json& goal = at(j, "goal");
  check_keys(goal, {"id", "name"}, {}, "hierarchy.goal");
  Hierarchy h{{get_string(at(goal, "id"), "hierarchy.goal.id"), get_string(at(goal, "name"), "hierarchy.goal.name")},
              get_strings(at(j, "criteria"), "hierarchy.criteria"),
              get_strings(at(j, "alternatives"), "hierarchy.alternatives")};
  h.validate();
  return h;
}

json members_to_json(const std::vector<DecisionMaker>& members) {
  json out = json::array();
  for (const auto& m : members) out.push_back({{"id", m.id}, {"name", m.name}});
  return out;
}

std::vector<DecisionMaker> members_from_json(const json& j) {
  std::vector<DecisionMaker> out;
  for (const auto& m : get_array(j, "members")) {
    check_keys(m, {"id", "name"}, {}, "members");
    out.push_back({get_string(at(m, "id"), "members.id"), get_string(at(m, "name"), "members.name")});
  }
  validate_members(out);
  return out;
}

json stop_rule_to_json(const StopRule& r) {
  return {{"cr_threshold", r.cr_threshold},
          {"max_group_iterations", r.max_group_iterations},
          {"max_per_member_revisions", r.max_per_member_revisions},
          {"revisers_per_round", r.revisers_per_round}};
}

StopRule stop_rule_from_json(const json& j) {
  const std::string ctx = "stop_rule";
  check_keys(j, {"cr_threshold", "max_group_iterations", "max_per_member_revisions", "revisers_per_round"}, {},
             ctx);
  StopRule r;
  r.cr_threshold = get_double(at(j, "cr_threshold"), ctx);
  r.max_group_iterations = get_size(at(j, "max_group_iterations"), ctx);
  r.max_per_member_revisions = get_size(at(j, "max_per_member_revisions"), ctx);
  r.revisers_per_round = get_size(at(j, "revisers_per_round"), ctx);
  try {
    r.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  return r;
}

json evaluation_to_json(const FullEvaluation& e) {
  json alts = json::array();
  for (std::size_t k = 0; k < e.alternatives.size(); ++k) {
    alts.push_back({{"criterion", e.criteria.labels().at(k)}, {"matrix", matrix_to_json(e.alternatives[k])}});
  }
  return {{"criteria", matrix_to_json(e.criteria)}, {"alternatives", alts}};
}

FullEvaluation evaluation_from_json(const json& j, const std::string& owner) {
  const std::string ctx = joined(owner, "evaluation");
  check_keys(j, {"criteria", "alternatives"}, {}, ctx);
  FullEvaluation e{matrix_from_json(at(j, "criteria"), joined(owner, criteria_matrix_name())), {}};
  const json& alts = get_array(at(j, "alternatives"), ctx + ".alternatives");
  for (std::size_t k = 0; k < alts.size(); ++k) {
    check_keys(alts[k], {"criterion", "matrix"}, {}, ctx + ".alternatives");
    const std::string criterion = get_string(at(alts[k], "criterion"), ctx + ".alternatives.criterion");
    if (k >= e.criteria.size() || criterion != e.criteria.labels()[k]) {
      throw ValidationError(ctx + ": alternative matrices must follow the criteria order",
                            {{joined(owner, alternatives_matrix_name(criterion)), 0, 0,
                              "unexpected criterion at position " + std::to_string(k)}});
    }
    e.alternatives.push_back(
        matrix_from_json(at(alts[k], "matrix"), joined(owner, alternatives_matrix_name(criterion))));
  }
  return e;
}

EvaluationPatch patch_from_json(const json& j, const std::string& owner) {
  const std::string ctx = joined(owner, "evaluation");
  check_keys(j, {}, {"criteria", "alternatives", "owner"}, ctx);
  EvaluationPatch p;
  if (j.contains("criteria")) p.criteria = matrix_from_json(at(j, "criteria"), joined(owner, criteria_matrix_name()));
  if (j.contains("alternatives")) {
    for (const auto& a : get_array(at(j, "alternatives"), ctx + ".alternatives")) {
      check_keys(a, {"criterion", "matrix"}, {}, ctx + ".alternatives");
      const std::string criterion = get_string(at(a, "criterion"), ctx + ".alternatives.criterion");
      p.alternatives.emplace(criterion,
                             matrix_from_json(at(a, "matrix"), joined(owner, alternatives_matrix_name(criterion))));
    }
  }
  return p;
}

json influence_to_json(const InfluenceReport& r) {
  json per = json::array();
  for (const auto& m : r.per_member) {
    per.push_back({{"member", m.member},
                   {"own_cr", m.own_cr},
                   {"leave_one_out_cr", m.leave_one_out_cr},
                   {"influence", m.influence},
                   {"matrix_influence", m.matrix_influence}});
  }
  return {{"group_cr", r.group_cr}, {"most_influential", r.most_influential}, {"per_member", per}};
}

json log_to_json(const std::vector<IterationRecord>& log) {
  json out = json::array();
  for (const auto& r : log) {
    out.push_back({{"round", r.round},
                   {"group_cr_before", r.group_cr_before},
                   {"group_cr_after", r.group_cr_after},
                   {"influence", influence_to_json(r.influence)},
                   {"targets", r.targets},
                   {"revised", r.revised}});
  }
  return out;
}

json consistency_to_json(const EvaluationConsistency& c) {
  json matrices = json::array();
  for (const auto& m : c.matrices) {
    const ConsistencyReport& r = m.report;
    json ordinal = json::array();
    for (const auto& t : r.judgment_violations) ordinal.push_back(t);
    matrices.push_back({{"matrix", m.matrix},
                        {"stage", m.stage == Stage::kPreliminary ? "preliminary" : "final"},
                        {"weights", r.priorities.weights},
                        {"lambda_max", r.lambda_max},
                        {"ci", r.ci},
                        {"ri", r.ri},
                        {"cr", r.cr},
                        {"cr_defined", r.cr_defined},
                        {"acceptable", r.acceptable()},
                        {"judgment_violations", ordinal}});
  }
  return {{"matrices", matrices},
          {"worst_cr", c.worst_cr},
          {"worst_matrix", c.worst().matrix},
          {"worst_final_cr", c.worst_final_cr}};
}

std::string encode_log(const Session& s) { return log_to_json(s.log()).dump() + "\n"; }

std::string encode(const Document& d) {
  json payload;
  switch (kind_of(d)) {
    case DocumentKind::kHierarchy: {
      const auto& h = std::get<Hierarchy>(d);
      h.validate();
      payload = hierarchy_to_json(h);
      break;
    }
    case DocumentKind::kJudgmentSet: {
      const auto& s = std::get<JudgmentSet>(d);
      check_standalone(s);
      payload = judgment_set_to_json(s);
      break;
    }
    case DocumentKind::kSession:
      payload = session_to_json(std::get<Session>(d));
      break;
    case DocumentKind::kSimulationConfig: {
      const auto& c = std::get<SimulationConfig>(d);
      try {
        c.validate();
      } catch (const DomainError& e) {
        throw ValidationError(e.what());
      }
      payload = simulation_to_json(c);
      break;
    }
    case DocumentKind::kTrajectory: {
      const auto& t = std::get<TrajectoryDocument>(d);
      check_trajectory(t);
      payload = trajectory_to_json(t);
      break;
    }
  }
  json envelope = {{"format_version", std::string(kFormatVersion)},
                   {"kind", std::string(to_string(kind_of(d)))},
                   {"payload", std::move(payload)}};
  return envelope.dump() + "\n";
}

Document decode(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  require_object(j, "document");
  if (!j.contains("format_version")) throw FormatError("document: missing field 'format_version'");
  const std::string version = get_string(at(j, "format_version"), "format_version");
  static const std::regex kSemver(R"(^(0|[1-9]\d*)\.(0|[1-9]\d*)\.(0|[1-9]\d*)$)");
  if (!std::regex_match(version, kSemver)) throw FormatError("format_version '" + version + "' is not a version");
  if (version != kFormatVersion) throw VersionError(version, std::string(kFormatVersion));
  check_keys(j, {"format_version", "kind", "payload"}, {}, "document");
  const std::string kind = get_string(at(j, "kind"), "kind");
  const json& payload = at(j, "payload");

  try {
    if (kind == "hierarchy") return hierarchy_from_json(payload);
    if (kind == "judgment-set") return judgment_set_from_json(payload);
    if (kind == "session") return session_from_json(payload);
    if (kind == "simulation-config") {
      SimulationConfig c = simulation_from_json(payload);
      try {
        c.validate();
      } catch (const DomainError& e) {
        throw ValidationError(e.what());
      }
      return c;
    }
    if (kind == "trajectory") return trajectory_from_json(payload);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed payload: ") + e.what());
  }
  throw FormatError("unknown document kind '" + kind + "'");
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points) {
  std::string out = "round,group_cr,target_member\n";
  for (const auto& p : points) {
    out += std::to_string(p.round) + "," + format_double(p.group_cr) + "," + p.target_member + "\n";
  }
  return out;
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::string out = "replication,round,group_cr,target_member\n";
  for (const auto& r : rows) {
    out += std::to_string(r.replication) + "," + std::to_string(r.round) + "," + format_double(r.group_cr) +
           "," + r.target_member + "\n";
  }
  return out;
}

TrajectoryDocument trajectory_document(const SimulationResult& r) {
  TrajectoryDocument t;
  for (const auto& run : r.runs) {
    for (const auto& p : run.trajectory) t.rows.push_back({run.replication, p.round, p.group_cr, p.target_member});
  }
  t.summary = r.summary;
  return t;
}

TrajectoryDocument trajectory_document(const Session& s) {
  TrajectoryDocument t;
  for (const auto& p : session_trajectory(s)) t.rows.push_back({0, p.round, p.group_cr, p.target_member});
  return t;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

}  // namespace stepahp::io
