#pragma once
// Canonical JSON documents.
//
// Every file is an envelope {"format_version", "kind", "payload"} with
// sorted keys, no insignificant whitespace and a trailing newline. Matrix
// entries are exact rational strings "p/q"; floats are rejected there.
// decode() never repairs input: it either returns a value satisfying all
// invariants or throws FormatError (malformed), VersionError (migration
// needed) or ValidationError (invariant violated, with cell diagnostics).

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stepahp/simulator.hpp"

namespace stepahp::io {

inline constexpr std::string_view kFormatVersion = "1.0.0";

enum class DocumentKind { kHierarchy, kJudgmentSet, kSession, kSimulationConfig, kTrajectory };
std::string_view to_string(DocumentKind k);

struct TrajectoryRow {
  std::size_t replication = 0;
  std::size_t round = 0;
  double group_cr = 0.0;
  std::string target_member;
  bool operator==(const TrajectoryRow&) const = default;
};

struct TrajectoryDocument {
  std::vector<TrajectoryRow> rows;
  std::vector<RoundSummary> summary;  // empty for a single session
  bool operator==(const TrajectoryDocument&) const = default;
};

using Document = std::variant<Hierarchy, JudgmentSet, Session, SimulationConfig, TrajectoryDocument>;

DocumentKind kind_of(const Document& d);

// Throws ValidationError for a document that breaks its own invariants.
std::string encode(const Document& d);
Document decode(std::string_view text);

// decode() plus a kind check (FormatError on mismatch).
template <typename T>
T decode_as(std::string_view text) {
  Document d = decode(text);
  if (auto* v = std::get_if<T>(&d)) return std::move(*v);
  throw FormatError("document has kind '" + std::string(to_string(kind_of(d))) +
                    "', which is not the expected kind");
}

// Payload-level codecs, used by the HTTP layer for request bodies that
// are not full envelopes.
nlohmann::json matrix_to_json(const ComparisonMatrix& m);
ComparisonMatrix matrix_from_json(const nlohmann::json& j, const std::string& name);
nlohmann::json hierarchy_to_json(const Hierarchy& h);
Hierarchy hierarchy_from_json(const nlohmann::json& j);
nlohmann::json members_to_json(const std::vector<DecisionMaker>& members);
std::vector<DecisionMaker> members_from_json(const nlohmann::json& j);
nlohmann::json stop_rule_to_json(const StopRule& r);
StopRule stop_rule_from_json(const nlohmann::json& j);
nlohmann::json evaluation_to_json(const FullEvaluation& e);
FullEvaluation evaluation_from_json(const nlohmann::json& j, const std::string& owner);
// Like evaluation_from_json but every matrix is optional.
EvaluationPatch patch_from_json(const nlohmann::json& j, const std::string& owner);
nlohmann::json influence_to_json(const InfluenceReport& r);
nlohmann::json log_to_json(const std::vector<IterationRecord>& log);
nlohmann::json consistency_to_json(const EvaluationConsistency& c);

// The iteration log alone, canonically encoded; equal logs give equal bytes.
std::string encode_log(const Session& s);

// "round,group_cr,target_member" for a session.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& points);
// "replication,round,group_cr,target_member" for simulation output.
std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
TrajectoryDocument trajectory_document(const SimulationResult& r);
TrajectoryDocument trajectory_document(const Session& s);

// Shortest text that reads back to the same double.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace stepahp::io
