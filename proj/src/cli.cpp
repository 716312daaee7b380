#include "stepahp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "stepahp/http_server.hpp"
#include "stepahp/io.hpp"
#include "stepahp/service.hpp"

namespace stepahp::cli {

using nlohmann::json;

namespace {

struct Common {
  bool json_output = false;
  bool warn_alternatives = true;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string verdict(const ConsistencyReport& r, double threshold) {
  if (!r.cr_defined) return "n/a (CR undefined for n = " + std::to_string(r.n) + ")";
  if (r.acceptable(threshold)) return "acceptable (" + num(r.cr) + " < " + num(threshold) + ")";
  return "not acceptable (" + num(r.cr) + " >= " + num(threshold) + ")";
}

void emit_warnings(const Hierarchy& h, const Common& c, std::ostream& err) {
  if (!c.warn_alternatives) return;
  for (const auto& w : h.warnings()) err << "warning: " << w << '\n';
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
  } else {
    io::write_file_atomic(path, text);
  }
}

json report_json(const MatrixConsistency& m, double threshold) {
  const auto& r = m.report;
  json triples = json::array();
  for (const auto& t : r.judgment_violations) triples.push_back({t[0], t[1], t[2]});
  return {{"matrix", m.matrix},
          {"n", r.n},
          {"weights", r.priorities.weights},
          {"lambda_max", r.lambda_max},
          {"ci", r.ci},
          {"cr", r.cr},
          {"cr_defined", r.cr_defined},
          {"acceptable", r.cr_defined ? json(r.acceptable(threshold)) : json(nullptr)},
          {"judgment_violations", triples}};
}

void print_matrix_report(const MatrixConsistency& m, const std::vector<std::string>& labels,
                         double threshold, std::ostream& out) {
  const auto& r = m.report;
  out << m.matrix << " (" << to_string(r.priorities.method) << ")\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << "  " << labels[i] << "  " << io::format_double(r.priorities.weights[i]) << '\n';
  }
  out << "  lambda_max " << num(r.lambda_max) << "  CI " << num(r.ci) << "  CR " << num(r.cr) << "  "
      << verdict(r, threshold) << '\n';
  for (const auto& t : r.judgment_violations) {
    out << "  intransitive: " << labels[t[0]] << " > " << labels[t[1]] << " > " << labels[t[2]]
        << " but not " << labels[t[0]] << " > " << labels[t[2]] << '\n';
  }
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::vector<std::string>& files, const Common& c, std::ostream& out,
                 std::ostream& err) {
  int worst = kOk;
  json results = json::array();
  for (const auto& path : files) {
    json entry = {{"path", path}};
    try {
      const io::Document doc = io::decode(io::read_file(path));
      entry["kind"] = std::string(to_string(io::kind_of(doc)));
      entry["ok"] = true;
      if (!c.json_output) out << path << ": ok (" << to_string(io::kind_of(doc)) << ")\n";
      if (const auto* h = std::get_if<Hierarchy>(&doc)) emit_warnings(*h, c, err);
      if (const auto* s = std::get_if<JudgmentSet>(&doc)) {
        json matrices = json::array();
        for (const auto& m : evaluation_consistency(s->evaluation).matrices) {
          matrices.push_back(report_json(m, kAcceptableCr));
          if (!c.json_output) out << "  " << m.matrix << ": " << verdict(m.report, kAcceptableCr) << '\n';
        }
        entry["matrices"] = matrices;
      }
    } catch (const std::exception& e) {
      const int code = exit_code_for(e);
      worst = std::max(worst, code);
      entry["ok"] = false;
      entry["error"] = service::error_response(e).body["error"];
      if (!c.json_output) {
        out << path << ": " << e.what() << '\n';
      }
    }
    results.push_back(std::move(entry));
  }
  if (c.json_output) out << results.dump() << '\n';
  return worst;
}

// ------------------------------------------------------------------- solve

int cmd_solve(const std::string& hierarchy_path, const std::string& judgments_path,
              const std::string& method_name, const Common& c, std::ostream& out, std::ostream& err) {
  const PriorityMethod method = parse_priority_method(method_name);
  const auto h = io::decode_as<Hierarchy>(io::read_file(hierarchy_path));
  const auto set = io::decode_as<JudgmentSet>(io::read_file(judgments_path));
  set.evaluation.validate_against(h, set.owner);
  emit_warnings(h, c, err);

  const EvaluationConsistency cons = evaluation_consistency(set.evaluation);
  std::vector<MatrixConsistency> shown = cons.matrices;
  if (method != PriorityMethod::kEigenvector) {
    // Consistency always comes from the eigenvector; only the weights follow the method.
    shown[0].report.priorities = derive_priorities(set.evaluation.criteria, method);
    for (std::size_t j = 0; j < set.evaluation.alternatives.size(); ++j) {
      shown[j + 1].report.priorities = derive_priorities(set.evaluation.alternatives[j], method);
    }
  }
  const auto ranking = synthesize_global(h, set.evaluation, method);

  if (c.json_output) {
    json matrices = json::array();
    for (const auto& m : shown) matrices.push_back(report_json(m, kAcceptableCr));
    json ranked = json::array();
    for (const auto& r : ranking) ranked.push_back({{"alternative", r.id}, {"priority", r.priority}});
    out << json{{"owner", set.owner}, {"method", to_string(method)}, {"matrices", matrices},
                {"ranking", ranked}}
               .dump()
        << '\n';
    return kOk;
  }

  for (std::size_t k = 0; k < shown.size(); ++k) {
    const auto& labels = k == 0 ? h.criteria : h.alternatives;
    print_matrix_report(shown[k], labels, kAcceptableCr, out);
  }
  out << "ranking\n";
  for (std::size_t k = 0; k < ranking.size(); ++k) {
    out << "  " << (k + 1) << ". " << ranking[k].id << "  " << io::format_double(ranking[k].priority) << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------- group

struct GroupOptions {
  std::string hierarchy;
  std::vector<std::string> judgments;
  std::vector<std::string> revisions;
  std::optional<double> threshold;
  std::optional<std::size_t> max_rounds;
  std::optional<std::size_t> max_revisions;
  std::optional<std::size_t> revisers;
  std::string csv_out;
  std::string session_out;
};

int cmd_group(const GroupOptions& o, const Common& c, std::ostream& out, std::ostream& err) {
  const auto h = io::decode_as<Hierarchy>(io::read_file(o.hierarchy));
  emit_warnings(h, c, err);
  std::vector<JudgmentSet> initial;
  for (const auto& path : o.judgments) initial.push_back(io::decode_as<JudgmentSet>(io::read_file(path)));
  std::vector<JudgmentSet> revisions;
  for (const auto& path : o.revisions) revisions.push_back(io::decode_as<JudgmentSet>(io::read_file(path)));

  StopRule rule;
  if (o.threshold) rule.cr_threshold = *o.threshold;
  if (o.max_rounds) rule.max_group_iterations = *o.max_rounds;
  if (o.max_revisions) rule.max_per_member_revisions = *o.max_revisions;
  if (o.revisers) rule.revisers_per_round = *o.revisers;

  std::vector<DecisionMaker> members;
  for (const auto& s : initial) members.push_back({s.owner, s.owner});
  Session session = Session::start(h, members, rule);
  for (const auto& s : initial) session.submit(s.owner, s.evaluation);
  session.advance();
  // Revisions are consumed in order; each must come from a member the
  // session is currently waiting on.
  for (const auto& s : revisions) {
    if (session.finished()) {
      throw ProtocolError("revision from '" + s.owner + "' given after the session finished", {s.owner});
    }
    session.submit(s.owner, s.evaluation);
    if (session.ready()) session.advance();
  }

  const auto trajectory = session_trajectory(session);
  if (!o.csv_out.empty()) write_output(o.csv_out, io::trajectory_csv(trajectory), out);
  if (!o.session_out.empty()) write_output(o.session_out, io::encode(session), out);

  const auto final_cr = final_group_cr(session);
  if (c.json_output) {
    json j = {{"phase", to_string(session.phase())},
              {"targets", session.targets()},
              {"pending_members", session.pending_members()},
              {"final_group_cr", final_cr ? json(*final_cr) : json(nullptr)},
              {"log", io::log_to_json(session.log())}};
    if (o.csv_out != "-" && o.session_out != "-") out << j.dump() << '\n';
    return kOk;
  }
  if (o.csv_out == "-" || o.session_out == "-") return kOk;

  out << "round  group_cr  target\n";
  for (const auto& p : trajectory) {
    out << "  " << p.round << "  " << num(p.group_cr) << "  " << (p.target_member.empty() ? "-" : p.target_member)
        << '\n';
  }
  out << "phase: " << to_string(session.phase()) << '\n';
  if (final_cr) out << "final group CR: " << num(*final_cr) << '\n';
  if (!session.finished()) {
    out << "waiting for revision from:";
    for (const auto& m : session.pending_members()) out << ' ' << m;
    out << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replications;
  std::string csv_out;
  std::string json_out;
};

int cmd_simulate(const SimulateOptions& o, const Common& c, std::ostream& out, std::ostream& err) {
  auto cfg = io::decode_as<SimulationConfig>(io::read_file(o.config));
  if (o.seed) cfg.seed = *o.seed;
  if (o.replications) cfg.replications = *o.replications;
  cfg.validate();
  emit_warnings(cfg.hierarchy(), c, err);

  const SimulationResult result = run_simulation(cfg);
  const io::TrajectoryDocument doc = io::trajectory_document(result);
  if (!o.csv_out.empty()) write_output(o.csv_out, io::trajectory_csv(doc.rows), out);
  if (!o.json_out.empty()) write_output(o.json_out, io::encode(doc), out);
  if (o.csv_out == "-" || o.json_out == "-") return kOk;

  if (c.json_output) {
    json outcomes = json::array();
    for (const auto& r : result.runs) {
      outcomes.push_back({{"replication", r.replication},
                          {"initial_cr", r.initial_cr},
                          {"final_cr", r.final_cr},
                          {"outcome", to_string(r.outcome)}});
    }
    json summary = json::array();
    for (const auto& s : result.summary) {
      summary.push_back({{"round", s.round}, {"mean_cr", s.mean_cr}, {"replications", s.replications}});
    }
    out << json{{"seed", cfg.seed}, {"replications", outcomes}, {"summary", summary},
                {"mean_initial_cr", result.mean_initial_cr}, {"mean_final_cr", result.mean_final_cr}}
               .dump()
        << '\n';
    return kOk;
  }

  out << "seed " << cfg.seed << ", " << cfg.replications << " replication(s)\n";
  out << "round  mean_cr  runs\n";
  for (const auto& s : result.summary) {
    out << "  " << s.round << "  " << num(s.mean_cr) << "  " << s.replications << '\n';
  }
  out << "mean initial CR: " << num(result.mean_initial_cr) << '\n';
  out << "mean final CR: " << num(result.mean_final_cr) << '\n';
  std::size_t converged = 0;
  for (const auto& r : result.runs) converged += r.outcome == Phase::kConverged ? 1 : 0;
  out << "converged: " << converged << " of " << result.runs.size() << '\n';
  return kOk;
}

// ------------------------------------------------------------------- serve

std::atomic<service::HttpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& store_flag, std::ostream& out) {
  std::optional<std::filesystem::path> store;
  const auto resolved = service::resolve_store_path(store_flag);
  if (!resolved.empty()) store = resolved;

  service::SessionService svc(store);
  service::HttpServer server(svc);
  const int bound = server.bind(host, port);
  out << "listening on " << host << ':' << bound;
  if (store) out << " (store " << store->string() << ')';
  out << std::endl;

  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kOk;
}

void report_error(const std::exception& e, int code, const Common& c, std::ostream& err) {
  if (c.json_output) {
    json body = service::error_response(e).body;
    body["error"]["exit_code"] = code;
    err << body.dump() << '\n';
    return;
  }
  // Cell diagnostics are already part of what().
  err << "error: " << e.what() << '\n';
  if (const auto* p = dynamic_cast<const ProtocolError*>(&e); p != nullptr && !p->members().empty()) {
    err << "  members:";
    for (const auto& m : p->members()) err << ' ' << m;
    err << '\n';
  }
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kIo;
  if (dynamic_cast<const NumericalError*>(&e)) return kNumerical;
  if (dynamic_cast<const ProtocolError*>(&e)) return kProtocol;
  if (dynamic_cast<const Error*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) return kValidation;
  return kInternal;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Step-wise group AHP: consistency, aggregation and facilitation"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json_output, "Machine-readable output and errors");
  app.add_flag("--warn-alternatives,!--no-warn-alternatives", common.warn_alternatives,
               "Warn when a hierarchy has more than three alternatives (default on)");

  auto* validate = app.add_subcommand("validate", "Check documents and print per-matrix diagnostics");
  std::vector<std::string> files;
  validate->add_option("files", files, "Document paths")->required();

  auto* solve = app.add_subcommand("solve", "Priorities, consistency and ranking for one judgment set");
  std::string solve_hierarchy, solve_judgments, method = "eigenvector";
  solve->add_option("--hierarchy", solve_hierarchy, "Hierarchy document")->required();
  solve->add_option("--judgments", solve_judgments, "Judgment-set document")->required();
  solve->add_option("--method", method, "eigenvector or geometric-mean")->capture_default_str();

  auto* group = app.add_subcommand("group", "Run a step-wise session from judgment-set files");
  GroupOptions go;
  group->add_option("--hierarchy", go.hierarchy, "Hierarchy document")->required();
  group->add_option("--judgments", go.judgments, "Initial judgment sets, one per member")->required();
  group->add_option("--revision", go.revisions, "Revised judgment sets, applied in order");
  group->add_option("--threshold", go.threshold, "Group CR threshold");
  group->add_option("--max-rounds", go.max_rounds, "Group iteration budget");
  group->add_option("--max-revisions", go.max_revisions, "Revision budget per member");
  group->add_option("--revisers", go.revisers, "Members asked to revise per round");
  group->add_option("--out", go.csv_out, "Trajectory CSV path ('-' for stdout)");
  group->add_option("--session-out", go.session_out, "Session document path ('-' for stdout)");

  auto* simulate = app.add_subcommand("simulate", "Run a simulation config");
  SimulateOptions so;
  simulate->add_option("--config", so.config, "Simulation-config document")->required();
  simulate->add_option("--seed", so.seed, "Override the config seed");
  simulate->add_option("--replications", so.replications, "Override the replication count");
  simulate->add_option("--csv", so.csv_out, "Trajectory CSV path ('-' for stdout)");
  simulate->add_option("--out", so.json_out, "Trajectory document path ('-' for stdout)");

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  std::string host = "127.0.0.1", store;
  int port = 8080;
  serve->add_option("--bind", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
  serve->add_option("--store", store, "Session store directory (STEPAHP_STORE overrides)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(files, common, out, err);
    if (*solve) return cmd_solve(solve_hierarchy, solve_judgments, method, common, out, err);
    if (*group) return cmd_group(go, common, out, err);
    if (*simulate) return cmd_simulate(so, common, out, err);
    if (*serve) return cmd_serve(host, port, store, out);
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    report_error(e, code, common, err);
    return code;
  }
  return kUsage;
}

}  // namespace stepahp::cli
