#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <future>

#include "http_harness.hpp"
#include "stepahp/service.hpp"

namespace stepahp {
namespace {

using nlohmann::json;
using service::SessionService;
using testing::bearer;
using testing::LiveServer;
using testing::read_fixture;

struct Conflict {
  Hierarchy h = io::decode_as<Hierarchy>(read_fixture("hierarchy.json"));
  std::vector<DecisionMaker> members = testing::members_named({"A", "B", "C"});
  std::string a = read_fixture("conflict_a.json");
  std::string b = read_fixture("conflict_b.json");
  std::string c = read_fixture("conflict_c.json");
  std::string c_revised = read_fixture("conflict_c_revised.json");
};

// A session created over HTTP, with its tokens.
struct Remote {
  httplib::Client cli;
  std::string base;
  std::string facilitator;
  json member_tokens;

  httplib::Result submit(const std::string& member, const std::string& body, const std::string& query = "") {
    return cli.Post(base + "/judgments" + query, bearer(member_tokens.at(member)), body, "application/json");
  }
  httplib::Result advance(const std::string& token) {
    return cli.Post(base + "/advance", bearer(token), "", "application/json");
  }
  json view() { return json::parse(cli.Get(base)->body); }
};

Remote create_conflict(const LiveServer& server, const Conflict& f) {
  Remote r{server.client(), {}, {}, {}};
  auto res = r.cli.Post("/api/sessions", testing::create_body(f.h, f.members, StopRule{}).dump(), "application/json");
  EXPECT_EQ(res->status, 201);
  const json created = json::parse(res->body);
  r.base = "/api/sessions/" + created.at("session_id").get<std::string>();
  r.facilitator = created.at("facilitator_token");
  r.member_tokens = created.at("member_tokens");
  return r;
}

json error_of(const httplib::Result& r) { return json::parse(r->body).at("error"); }

TEST(Http, CreateReturnsOneTokenPerMember) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  EXPECT_EQ(r.member_tokens.size(), 3u);
  EXPECT_FALSE(r.facilitator.empty());
  const json v = r.view();
  EXPECT_EQ(v.at("phase"), "collecting");
  EXPECT_EQ(v.at("pending_members"), (json{"A", "B", "C"}));
  EXPECT_EQ(v.at("version"), 0);
}

TEST(Http, FullConflictRoundTrip) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  EXPECT_EQ(r.submit("A", f.a)->status, 200);
  EXPECT_EQ(r.submit("B", f.b)->status, 200);
  EXPECT_EQ(r.submit("C", f.c)->status, 200);
  auto res = r.advance(r.facilitator);
  ASSERT_EQ(res->status, 200);
  json v = json::parse(res->body);
  EXPECT_EQ(v.at("phase"), "awaiting-revision");
  EXPECT_EQ(v.at("targets"), (json{"C"}));
  EXPECT_EQ(v.at("influence").at("most_influential"), "C");

  EXPECT_EQ(r.submit("C", f.c_revised)->status, 200);
  v = json::parse(r.advance(r.facilitator)->body);
  EXPECT_EQ(v.at("phase"), "converged");
  EXPECT_TRUE(v.contains("ranking"));

  const auto csv = r.cli.Get(r.base + "/trajectory.csv");
  EXPECT_EQ(csv->status, 200);
  EXPECT_EQ(csv->body.rfind("round,group_cr,target_member\n1,", 0), 0u);
  EXPECT_NE(csv->body.find(",C\n2,"), std::string::npos);
}

TEST(Http, AdvanceBeforeSubmissionsIsAProtocolConflict) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  r.submit("B", f.b);
  const auto res = r.advance(r.facilitator);
  EXPECT_EQ(res->status, 409);
  EXPECT_EQ(error_of(res).at("code"), "protocol_order");
  EXPECT_EQ(error_of(res).at("members"), (json{"A", "C"}));
}

TEST(Http, TokensAreCheckedPerRole) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  auto res = r.cli.Post(r.base + "/judgments", bearer("not-a-token"), f.a, "application/json");
  EXPECT_EQ(res->status, 403);
  EXPECT_EQ(error_of(res).at("code"), "unauthorized");
  // B's token cannot submit A's judgments.
  EXPECT_EQ(r.submit("B", f.a)->status, 403);
  // Members cannot advance, and a missing header is rejected.
  EXPECT_EQ(r.advance(r.member_tokens.at("A"))->status, 403);
  EXPECT_EQ(r.cli.Post(r.base + "/advance", "", "application/json")->status, 403);
  EXPECT_EQ(r.view().at("version"), 0);
}

TEST(Http, UnknownSessionIs404) {
  LiveServer server;
  auto cli = server.client();
  const auto res = cli.Get("/api/sessions/does-not-exist");
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(error_of(res).at("code"), "unknown_session");
  EXPECT_EQ(cli.Get("/api/sessions/nope/trajectory.csv")->status, 404);
}

TEST(Http, BadBodiesAre400WithACode) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  auto res = r.submit("A", "{not json");
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(error_of(res).at("code"), "malformed");

  res = r.submit("A", read_fixture("broken_reciprocity.json"));
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(error_of(res).at("code"), "validation_failed");
  EXPECT_EQ(error_of(res).at("cells").at(0).at("row"), 1);

  json old = json::parse(f.a);
  old["format_version"] = "2.0.0";
  res = r.submit("A", old.dump());
  EXPECT_EQ(error_of(res).at("code"), "migration_needed");

  res = r.cli.Post("/api/sessions", R"({"hierarchy":{}})", "application/json");
  EXPECT_EQ(res->status, 400);
  res = r.cli.Get(r.base + "?since=abc");
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(r.view().at("version"), 0);
}

TEST(Http, PartialSubmissionReplacesOnlyGivenMatrices) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  r.submit("A", f.a);
  r.submit("B", f.b);
  r.submit("C", f.c);
  r.advance(r.facilitator);

  json patch = json::parse(f.c_revised);
  patch["payload"].erase("alternatives");
  auto res = r.submit("C", patch.dump(), "?partial=1");
  ASSERT_EQ(res->status, 200) << res->body;

  const JudgmentSet c = io::decode_as<JudgmentSet>(f.c);
  const JudgmentSet revised = io::decode_as<JudgmentSet>(f.c_revised);
  const Session s = io::decode_as<Session>(r.cli.Get(r.base + "/document")->body);
  EXPECT_EQ(s.judgments("C").criteria, revised.evaluation.criteria);
  EXPECT_EQ(s.judgments("C").alternatives, c.evaluation.alternatives);

  patch["format_version"] = "0.9.0";
  EXPECT_EQ(error_of(r.submit("C", patch.dump(), "?partial=1")).at("code"), "migration_needed");
}

TEST(Http, ReadsAreIdempotent) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  r.submit("A", f.a);
  const std::string first = r.cli.Get(r.base)->body;
  const std::string doc = r.cli.Get(r.base + "/document")->body;
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.cli.Get(r.base)->body, first);
    EXPECT_EQ(r.cli.Get(r.base + "/document")->body, doc);
  }
}

TEST(Http, LongPollWakesOnChange) {
  LiveServer server;
  Conflict f;
  Remote r = create_conflict(server, f);
  auto waiter = std::async(std::launch::async, [&] {
    auto cli = server.client();
    return json::parse(cli.Get(r.base + "?since=0&wait_ms=20000")->body);
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  const auto start = std::chrono::steady_clock::now();
  r.submit("A", f.a);
  const json v = waiter.get();
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
  EXPECT_EQ(v.at("version"), 1);

  // Nothing changes: the wait runs out and the current state comes back.
  const json same = json::parse(r.cli.Get(r.base + "?since=1&wait_ms=50")->body);
  EXPECT_EQ(same.at("version"), 1);
}

TEST(Http, ConcurrentSubmissionsAreSerialized) {
  LiveServer server;
  const Hierarchy h = testing::small_hierarchy(3, 3);
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) ids.push_back("m" + std::to_string(i));
  auto cli = server.client();
  const json created = json::parse(
      cli.Post("/api/sessions", testing::create_body(h, testing::members_named(ids), StopRule{}).dump(),
               "application/json")
          ->body);
  const std::string base = "/api/sessions/" + created.at("session_id").get<std::string>();

  std::vector<std::future<int>> writers;
  for (const auto& id : ids) {
    writers.push_back(std::async(std::launch::async, [&, id] {
      std::mt19937_64 rng(std::hash<std::string>{}(id));
      auto c = server.client();
      int ok = 0;
      for (int k = 0; k < 3; ++k) {
        const auto body = testing::judgment_body(id, testing::random_evaluation(h, rng));
        ok += c.Post(base + "/judgments", bearer(created.at("member_tokens").at(id)), body, "application/json")->status == 200;
      }
      return ok;
    }));
  }
  int accepted = 0;
  for (auto& w : writers) accepted += w.get();
  EXPECT_EQ(accepted, 24);
  const json v = json::parse(cli.Get(base)->body);
  EXPECT_EQ(v.at("version"), 24);
  EXPECT_TRUE(v.at("ready").get<bool>());
  const Session s = io::decode_as<Session>(cli.Get(base + "/document")->body);
  EXPECT_EQ(s.events().size(), 24u);
}

TEST(Http, SessionLogMatchesInProcessRunByteForByte) {
  LiveServer server;
  std::size_t rounds = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const testing::ScriptedSession script(seed);
    const Session local = script.run_in_process();
    rounds += local.log().size();
    const std::string remote_doc = testing::run_over_http(server, script);
    EXPECT_EQ(remote_doc, io::encode(local)) << seed;
    EXPECT_EQ(io::encode_log(io::decode_as<Session>(remote_doc)), io::encode_log(local)) << seed;
  }
  EXPECT_GT(rounds, 10u);
}

TEST(Store, SessionsSurviveARestart) {
  const auto dir = std::filesystem::temp_directory_path() / "stepahp_store_test";
  std::filesystem::remove_all(dir);
  Conflict f;
  std::string id, document, facilitator;
  {
    SessionService svc(dir);
    const auto created = svc.create(f.h, f.members, StopRule{});
    id = created.session_id;
    facilitator = created.facilitator_token;
    svc.submit(id, created.member_tokens.at("A"), io::decode_as<JudgmentSet>(f.a));
    svc.submit(id, created.member_tokens.at("B"), io::decode_as<JudgmentSet>(f.b));
    svc.submit(id, created.member_tokens.at("C"), io::decode_as<JudgmentSet>(f.c));
    document = svc.session_document(id);
  }
  SessionService reloaded(dir);
  EXPECT_EQ(reloaded.session_ids(), (std::vector<std::string>{id}));
  EXPECT_EQ(reloaded.session_document(id), document);
  // Tokens come back too.
  reloaded.advance(id, facilitator);
  EXPECT_EQ(reloaded.snapshot(id).phase(), Phase::kAwaitingRevision);
  std::filesystem::remove_all(dir);
}

TEST(Store, EnvironmentOverridesTheDefaultPath) {
  ::unsetenv("STEPAHP_STORE");
  EXPECT_EQ(service::resolve_store_path("fallback"), std::filesystem::path("fallback"));
  ::setenv("STEPAHP_STORE", "/tmp/elsewhere", 1);
  EXPECT_EQ(service::resolve_store_path("fallback"), std::filesystem::path("/tmp/elsewhere"));
  ::unsetenv("STEPAHP_STORE");
}

TEST(ErrorMapping, EveryErrorClassHasAStatus) {
  EXPECT_EQ(service::error_response(service::NotFoundError("x")).status, 404);
  EXPECT_EQ(service::error_response(service::AuthorizationError("x")).status, 403);
  EXPECT_EQ(service::error_response(ProtocolError("x", {"A"})).status, 409);
  EXPECT_EQ(service::error_response(FormatError("x")).status, 400);
  EXPECT_EQ(service::error_response(DomainError("x")).status, 400);
  EXPECT_EQ(service::error_response(NumericalError("x", 3)).status, 500);
  EXPECT_EQ(service::error_response(IoError("x")).body.at("error").at("code"), "io_failure");
  EXPECT_EQ(service::error_response(std::runtime_error("x")).body.at("error").at("code"), "internal_error");
}

}  // namespace
}  // namespace stepahp
