#include "stepahp/service.hpp"

#include <cstdlib>
#include <random>

#include "stepahp/io.hpp"

namespace stepahp::service {

using nlohmann::json;

namespace {

std::string random_token() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int word = 0; word < 2; ++word) {
    std::uint64_t v = rng();
    for (int i = 0; i < 16; ++i, v >>= 4) out.push_back(kHex[v & 0xf]);
  }
  return out;
}

bool valid_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

json state_view(const std::string& id, const Session& s, std::uint64_t version) {
  json members = json::array();
  for (const auto& m : s.members()) {
    json entry = {{"id", m.id}, {"name", m.name}, {"submitted", s.has_judgments(m.id)},
                  {"revisions", s.revisions(m.id)}};
    if (s.has_judgments(m.id)) entry["own_cr"] = evaluation_consistency(s.judgments(m.id)).worst_cr;
    members.push_back(std::move(entry));
  }

  json trajectory = json::array();
  for (const auto& p : session_trajectory(s)) {
    trajectory.push_back({{"round", p.round}, {"group_cr", p.group_cr}, {"target_member", p.target_member}});
  }

  json view = {{"session_id", id},
               {"version", version},
               {"phase", std::string(to_string(s.phase()))},
               {"targets", s.targets()},
               {"pending_members", s.pending_members()},
               {"ready", s.ready()},
               {"members", members},
               {"hierarchy", io::hierarchy_to_json(s.hierarchy())},
               {"stop_rule", io::stop_rule_to_json(s.stop_rule())},
               {"trajectory", trajectory},
               {"log", io::log_to_json(s.log())}};

  bool all_in = true;
  for (const auto& m : s.members()) all_in = all_in && s.has_judgments(m.id);
  if (all_in) {
    const auto sets = s.judgment_sets();
    view["group"] = io::consistency_to_json(group_consistency(s.hierarchy(), sets));
    view["influence"] = io::influence_to_json(influence_ranking(s.hierarchy(), sets));
    if (s.finished()) {
      json ranking = json::array();
      for (const auto& r : synthesize_global(s.hierarchy(), aggregate_judgments(s.hierarchy(), sets))) {
        ranking.push_back({{"alternative", r.id}, {"priority", r.priority}});
      }
      view["ranking"] = ranking;
    }
  }
  return view;
}

}  // namespace

std::filesystem::path resolve_store_path(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("STEPAHP_STORE"); env != nullptr && *env != '\0') return env;
  return fallback;
}

SessionService::SessionService(std::optional<std::filesystem::path> store) : store_(std::move(store)) {
  if (store_) {
    std::error_code ec;
    std::filesystem::create_directories(*store_, ec);
    if (ec) throw IoError("cannot create store directory '" + store_->string() + "': " + ec.message());
    load_store();
  }
}

void SessionService::load_store() {
  for (const auto& file : std::filesystem::directory_iterator(*store_)) {
    const auto path = file.path();
    if (path.extension() != ".json" || path.stem().extension() == ".tokens") continue;
    const std::string id = path.stem().string();
    Session s = io::decode_as<Session>(io::read_file(path));
    auto entry = std::make_shared<Entry>(std::move(s));
    const json tokens = json::parse(io::read_file(*store_ / (id + ".tokens.json")));
    entry->facilitator_token = tokens.at("facilitator").get<std::string>();
    entry->member_tokens = tokens.at("members").get<std::map<std::string, std::string>>();
    entry->version = entry->session.events().size();
    sessions_.emplace(id, std::move(entry));
  }
}

void SessionService::persist(const std::string& id, const Session& s) const {
  if (!store_) return;
  io::write_file_atomic(*store_ / (id + ".json"), io::encode(s));
}

std::uint64_t SessionService::commit(const std::string& id, Entry& e, Session next) {
  // Stored before it becomes visible, so a failed write changes nothing.
  persist(id, next);
  e.session = std::move(next);
  ++e.version;
  e.changed.notify_all();
  return e.version;
}

void SessionService::persist_tokens(const std::string& id, const Entry& e) const {
  if (!store_) return;
  const json tokens = {{"facilitator", e.facilitator_token}, {"members", e.member_tokens}};
  io::write_file_atomic(*store_ / (id + ".tokens.json"), tokens.dump() + "\n");
}

CreatedSession SessionService::create(Hierarchy h, std::vector<DecisionMaker> members, StopRule rule) {
  auto entry = std::make_shared<Entry>(Session::start(std::move(h), std::move(members), rule));
  CreatedSession out;
  entry->facilitator_token = random_token();
  for (const auto& m : entry->session.members()) entry->member_tokens[m.id] = random_token();
  out.facilitator_token = entry->facilitator_token;
  out.member_tokens = entry->member_tokens;

  std::unique_lock lock(sessions_mu_);
  do {
    out.session_id = random_token().substr(0, 16);
  } while (sessions_.count(out.session_id) != 0);
  persist_tokens(out.session_id, *entry);
  persist(out.session_id, entry->session);
  sessions_.emplace(out.session_id, std::move(entry));
  return out;
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mu_);
  auto it = valid_id(id) ? sessions_.find(id) : sessions_.end();
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
  return it->second;
}

std::string SessionService::member_for_token(const Entry& e, const std::string& token) const {
  for (const auto& [member, t] : e.member_tokens) {
    if (!token.empty() && t == token) return member;
  }
  throw AuthorizationError("token does not belong to a member of this session");
}

json SessionService::state(const std::string& id, std::optional<std::uint64_t> since,
                           std::chrono::milliseconds wait) const {
  auto entry = find(id);
  std::unique_lock lock(entry->mu);
  if (since && *since == entry->version) {
    entry->changed.wait_for(lock, wait, [&] { return entry->version != *since; });
  }
  const Session snapshot = entry->session;
  const std::uint64_t version = entry->version;
  lock.unlock();
  return state_view(id, snapshot, version);
}

std::uint64_t SessionService::submit(const std::string& id, const std::string& token, const JudgmentSet& set) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  const std::string member = member_for_token(*entry, token);
  if (member != set.owner) {
    throw AuthorizationError("token belongs to '" + member + "', not to '" + set.owner + "'");
  }
  Session next = entry->session;
  next.submit(member, set.evaluation);
  return commit(id, *entry, std::move(next));
}

std::uint64_t SessionService::submit_patch(const std::string& id, const std::string& token,
                                           const std::string& owner, const EvaluationPatch& patch) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  const std::string member = member_for_token(*entry, token);
  if (member != owner) throw AuthorizationError("token belongs to '" + member + "', not to '" + owner + "'");
  Session next = entry->session;
  next.submit_patch(member, patch);
  return commit(id, *entry, std::move(next));
}

std::uint64_t SessionService::advance(const std::string& id, const std::string& token) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  if (token.empty() || token != entry->facilitator_token) {
    throw AuthorizationError("advancing a round needs the facilitator token");
  }
  Session next = entry->session;
  next.advance();
  return commit(id, *entry, std::move(next));
}

Session SessionService::snapshot(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  return entry->session;
}

std::string SessionService::trajectory_csv(const std::string& id) const {
  return io::trajectory_csv(session_trajectory(snapshot(id)));
}

std::string SessionService::session_document(const std::string& id) const { return io::encode(snapshot(id)); }

std::vector<std::string> SessionService::session_ids() const {
  std::shared_lock lock(sessions_mu_);
  std::vector<std::string> out;
  for (const auto& [id, entry] : sessions_) out.push_back(id);
  return out;
}

ErrorResponse error_response(const std::exception& e) {
  auto make = [&](int status, const char* code) {
    return ErrorResponse{status, {{"error", {{"code", code}, {"message", e.what()}}}}};
  };
  if (dynamic_cast<const NotFoundError*>(&e)) return make(404, "unknown_session");
  if (dynamic_cast<const AuthorizationError*>(&e)) return make(403, "unauthorized");
  if (const auto* p = dynamic_cast<const ProtocolError*>(&e)) {
    ErrorResponse r = make(409, "protocol_order");
    r.body["error"]["members"] = p->members();
    return r;
  }
  if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
    ErrorResponse r = make(400, "validation_failed");
    json cells = json::array();
    for (const auto& c : v->cells()) {
      cells.push_back({{"matrix", c.matrix}, {"row", c.row}, {"col", c.col}, {"reason", c.reason}});
    }
    r.body["error"]["cells"] = cells;
    return r;
  }
  if (dynamic_cast<const FormatError*>(&e)) return make(400, "malformed");
  if (dynamic_cast<const VersionError*>(&e)) return make(400, "migration_needed");
  if (dynamic_cast<const StructuralError*>(&e)) return make(400, "validation_failed");
  if (dynamic_cast<const DomainError*>(&e)) return make(400, "invalid_argument");
  if (dynamic_cast<const NumericalError*>(&e)) return make(500, "numerical_failure");
  if (dynamic_cast<const IoError*>(&e)) return make(500, "io_failure");
  if (dynamic_cast<const nlohmann::json::exception*>(&e) || dynamic_cast<const std::invalid_argument*>(&e) ||
      dynamic_cast<const std::out_of_range*>(&e)) {
    return make(400, "malformed");
  }
  return make(500, "internal_error");
}

}  // namespace stepahp::service
