#include <gtest/gtest.h>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <random>

#include "session_fuzz.hpp"
#include "stepahp/io.hpp"
#include "support.hpp"

namespace stepahp {
namespace {

using nlohmann::json;
using testing::read_fixture;

json envelope(const std::string& kind, json payload) {
  return {{"format_version", "1.0.0"}, {"kind", kind}, {"payload", std::move(payload)}};
}

std::string edit(const std::string& fixture, const std::function<void(json&)>& change) {
  json j = json::parse(read_fixture(fixture));
  change(j);
  return j.dump();
}

TEST(Documents, FixturesAreCanonical) {
  for (const char* name : {"hierarchy.json", "hierarchy_many_alternatives.json", "all_ones.json", "mixed.json",
                           "conflict_a.json", "conflict_b.json", "conflict_c.json", "conflict_c_revised.json",
                           "descent_simulation.json"}) {
    const std::string text = read_fixture(name);
    EXPECT_EQ(io::encode(io::decode(text)), text) << name;
  }
}

TEST(Documents, KindsRoundTrip) {
  const auto h = io::decode_as<Hierarchy>(read_fixture("hierarchy.json"));
  EXPECT_EQ(h.criteria, (std::vector<std::string>{"c1", "c2", "c3"}));
  EXPECT_EQ(io::decode_as<Hierarchy>(io::encode(h)), h);

  const auto set = io::decode_as<JudgmentSet>(read_fixture("mixed.json"));
  EXPECT_EQ(set.owner, "analyst");
  EXPECT_EQ(set.evaluation.criteria(0, 2), Rational(5));
  EXPECT_EQ(io::decode_as<JudgmentSet>(io::encode(set)), set);

  const auto cfg = io::decode_as<SimulationConfig>(read_fixture("descent_simulation.json"));
  EXPECT_EQ(cfg.seed, 2004u);
  EXPECT_EQ(io::decode_as<SimulationConfig>(io::encode(cfg)), cfg);

  auto small = cfg;
  small.replications = 3;
  const auto traj = io::trajectory_document(run_simulation(small));
  EXPECT_EQ(io::decode_as<io::TrajectoryDocument>(io::encode(traj)), traj);
}

TEST(Documents, SessionsRoundTripThroughTheirEventLog) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Session s = testing::fuzz_session(seed).session;
    const std::string text = io::encode(s);
    const Session back = io::decode_as<Session>(text);
    EXPECT_EQ(io::encode(back), text);
    EXPECT_EQ(io::encode_log(back), io::encode_log(s));
  }
}

TEST(Documents, TamperedSessionStateIsRejected) {
  const Session s = testing::fuzz_session(3).session;
  json j = json::parse(io::encode(s));
  j["payload"]["phase"] = "collecting";
  EXPECT_THROW(io::decode(j.dump()), ValidationError);
  j = json::parse(io::encode(s));
  j["payload"]["log"][0]["group_cr_before"] = 0.0;
  EXPECT_THROW(io::decode(j.dump()), ValidationError);
  j = json::parse(io::encode(s));
  j["payload"]["events"].push_back({{"type", "advance"}});
  EXPECT_THROW(io::decode(j.dump()), ValidationError);
}

TEST(Documents, OutputIsSortedCompactWithTrailingNewline) {
  const std::string text = io::encode(io::decode(read_fixture("hierarchy.json")));
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(std::count(text.begin(), text.end(), ' '), 2);  // both inside "Choose a site"
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_LT(text.find("\"format_version\""), text.find("\"kind\""));
  EXPECT_LT(text.find("\"kind\""), text.find("\"payload\""));
}

TEST(Documents, VersionPolicy) {
  const std::string base = read_fixture("hierarchy.json");
  auto with_version = [&](const std::string& v) {
    json j = json::parse(base);
    j["format_version"] = v;
    return j.dump();
  };
  EXPECT_THROW(io::decode(with_version("2.0.0")), VersionError);
  EXPECT_THROW(io::decode(with_version("1.0.1")), VersionError);
  EXPECT_THROW(io::decode(with_version("one")), FormatError);
  EXPECT_THROW(io::decode(with_version("1.0")), FormatError);
  try {
    io::decode(with_version("1.4.0"));
    FAIL();
  } catch (const VersionError& e) {
    EXPECT_EQ(e.found(), "1.4.0");
  }
}

TEST(Documents, MalformedInputIsAFormatError) {
  EXPECT_THROW(io::decode("{"), FormatError);
  EXPECT_THROW(io::decode("[]"), FormatError);
  EXPECT_THROW(io::decode(R"({"kind":"hierarchy","payload":{}})"), FormatError);
  EXPECT_THROW(io::decode(envelope("spreadsheet", json::object()).dump()), FormatError);
  EXPECT_THROW(io::decode(edit("hierarchy.json", [](json& j) { j["extra"] = 1; })), FormatError);
  EXPECT_THROW(io::decode(edit("hierarchy.json", [](json& j) { j["payload"]["colour"] = "red"; })), FormatError);
  EXPECT_THROW(io::decode(edit("hierarchy.json", [](json& j) { j["payload"].erase("goal"); })), FormatError);
  EXPECT_THROW(io::decode(edit("hierarchy.json", [](json& j) { j["payload"]["criteria"] = "c1"; })), FormatError);
}

TEST(Documents, MatrixEntriesMustBeExactCanonicalRationals) {
  auto entry = [](json value) {
    return edit("all_ones.json", [&](json& j) { j["payload"]["criteria"]["entries"][0][1] = value; });
  };
  EXPECT_THROW(io::decode(entry(3.0)), FormatError);
  EXPECT_THROW(io::decode(entry(3)), FormatError);
  EXPECT_THROW(io::decode(entry("3")), FormatError);
  EXPECT_THROW(io::decode(entry("6/2")), FormatError);
  EXPECT_THROW(io::decode(entry("03/1")), FormatError);
}

TEST(Documents, BrokenReciprocityIsAValidationErrorWithTheCell) {
  try {
    io::decode(read_fixture("broken_reciprocity.json"));
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.cells().size(), 1u);
    EXPECT_EQ(e.cells()[0].matrix, "analyst/criteria");
    EXPECT_EQ(e.cells()[0].row, 1u);
    EXPECT_EQ(e.cells()[0].col, 0u);
  }
}

TEST(Documents, OffScaleAndMisalignedJudgmentsAreValidationErrors) {
  EXPECT_THROW(io::decode(edit("all_ones.json",
                               [](json& j) {
                                 j["payload"]["criteria"]["entries"][0][1] = "10/1";
                                 j["payload"]["criteria"]["entries"][1][0] = "1/10";
                               })),
               ValidationError);
  EXPECT_THROW(io::decode(edit("all_ones.json", [](json& j) { j["payload"]["alternatives"].erase(2); })),
               ValidationError);
  EXPECT_THROW(
      io::decode(edit("all_ones.json", [](json& j) { std::swap(j["payload"]["alternatives"][0], j["payload"]["alternatives"][1]); })),
      ValidationError);
  EXPECT_THROW(io::decode(edit("all_ones.json", [](json& j) { j["payload"]["owner"] = ""; })), ValidationError);
  EXPECT_THROW(io::decode(edit("hierarchy.json", [](json& j) { j["payload"]["criteria"] = {"c1"}; })),
               ValidationError);
}

TEST(Documents, DecodeAsChecksTheKind) {
  EXPECT_THROW(io::decode_as<JudgmentSet>(read_fixture("hierarchy.json")), FormatError);
}

TEST(Documents, EncodeRefusesInvalidValues) {
  Hierarchy h = testing::small_hierarchy();
  h.alternatives.push_back("a1");
  EXPECT_THROW(io::encode(h), ValidationError);
  io::TrajectoryDocument t;
  t.rows.push_back({0, 0, 0.5, "x"});
  EXPECT_THROW(io::encode(t), ValidationError);
}

TEST(Csv, SessionTrajectory) {
  const std::vector<TrajectoryPoint> points = {{1, 0.5, "C"}, {2, 0.0625, ""}};
  EXPECT_EQ(io::trajectory_csv(points), "round,group_cr,target_member\n1,0.5,C\n2,0.0625,\n");
  const std::vector<io::TrajectoryRow> rows = {{3, 1, 0.25, "eng1"}};
  EXPECT_EQ(io::trajectory_csv(rows), "replication,round,group_cr,target_member\n3,1,0.25,eng1\n");
}

TEST(Numbers, ShortestFormattingRoundTrips) {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = u(rng);
    const std::string s = io::format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x);
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
}

TEST(Files, AtomicWriteReplacesAndReadBackMatches) {
  const auto dir = std::filesystem::temp_directory_path() / "stepahp_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "doc.json";
  io::write_file_atomic(path, "first\n");
  io::write_file_atomic(path, "second\n");
  EXPECT_EQ(io::read_file(path), "second\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "doc.json.tmp"));
  EXPECT_THROW(io::read_file(dir / "missing.json"), IoError);
  EXPECT_THROW(io::write_file_atomic(dir / "no" / "such" / "dir.json", "x"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(PayloadCodecs, PatchAcceptsAnySubset) {
  const auto set = io::decode_as<JudgmentSet>(read_fixture("mixed.json"));
  json j = io::evaluation_to_json(set.evaluation);
  j.erase("criteria");
  j["alternatives"].erase(0);
  const auto patch = io::patch_from_json(j, "analyst");
  EXPECT_FALSE(patch.criteria.has_value());
  EXPECT_EQ(patch.alternatives.size(), 2u);
  EXPECT_EQ(patch.alternatives.at("c2"), set.evaluation.alternatives[1]);
  EXPECT_THROW(io::patch_from_json(json{{"weights", 1}}, "analyst"), FormatError);
}

TEST(PayloadCodecs, StopRuleMustBeComplete) {
  const StopRule rule;
  EXPECT_EQ(io::stop_rule_from_json(io::stop_rule_to_json(rule)), rule);
  json j = io::stop_rule_to_json(rule);
  j.erase("revisers_per_round");
  EXPECT_THROW(io::stop_rule_from_json(j), FormatError);
  j = io::stop_rule_to_json(rule);
  j["max_group_iterations"] = 0;
  EXPECT_THROW(io::stop_rule_from_json(j), ValidationError);
  j["max_group_iterations"] = -1;
  EXPECT_THROW(io::stop_rule_from_json(j), FormatError);
}

}  // namespace
}  // namespace stepahp
