#pragma once
// Session service behind the HTTP API.
//
// Sessions live in memory and, when a store directory is configured, as one
// canonical session document per session (the replayable event log) plus a
// token file. Writes to one session are serialized by its mutex; readers
// take a consistent snapshot under the same mutex and compute outside it.

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "stepahp/errors.hpp"
#include "stepahp/protocol.hpp"

namespace stepahp::service {

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class AuthorizationError : public Error {
 public:
  using Error::Error;
};

struct CreatedSession {
  std::string session_id;
  std::string facilitator_token;
  std::map<std::string, std::string> member_tokens;  // member id -> token
};

// Store directory from STEPAHP_STORE if set, otherwise `fallback`.
std::filesystem::path resolve_store_path(const std::filesystem::path& fallback);

class SessionService {
 public:
  // No store: purely in-memory. With a store: existing sessions are
  // replayed from it on construction.
  explicit SessionService(std::optional<std::filesystem::path> store = std::nullopt);

  CreatedSession create(Hierarchy h, std::vector<DecisionMaker> members, StopRule rule);

  // Diagnostics view. With `since`, blocks until the version differs from
  // it or `wait` elapses.
  nlohmann::json state(const std::string& id, std::optional<std::uint64_t> since = std::nullopt,
                       std::chrono::milliseconds wait = std::chrono::milliseconds(0)) const;

  // Returns the new state version.
  std::uint64_t submit(const std::string& id, const std::string& token, const JudgmentSet& set);
  std::uint64_t submit_patch(const std::string& id, const std::string& token, const std::string& owner,
                             const EvaluationPatch& patch);
  std::uint64_t advance(const std::string& id, const std::string& token);

  std::string trajectory_csv(const std::string& id) const;
  std::string session_document(const std::string& id) const;
  Session snapshot(const std::string& id) const;
  std::vector<std::string> session_ids() const;

 private:
  struct Entry {
    mutable std::mutex mu;
    mutable std::condition_variable changed;
    Session session;
    std::uint64_t version = 0;
    std::string facilitator_token;
    std::map<std::string, std::string> member_tokens;

    explicit Entry(Session s) : session(std::move(s)) {}
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  std::string member_for_token(const Entry& e, const std::string& token) const;
  void persist(const std::string& id, const Session& s) const;
  std::uint64_t commit(const std::string& id, Entry& e, Session next);  // caller holds e.mu
  void persist_tokens(const std::string& id, const Entry& e) const;
  void load_store();

  std::optional<std::filesystem::path> store_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

// JSON body for an exception: {"error": {"code", "message", ...}} plus the
// HTTP status it maps to.
struct ErrorResponse {
  int status = 500;
  nlohmann::json body;
};
ErrorResponse error_response(const std::exception& e);

}  // namespace stepahp::service
