#include "stepahp/simulator.hpp"

#include <cmath>
#include <numbers>

#include "stepahp/errors.hpp"

namespace stepahp {

namespace {

void check_profile(const MatrixProfile& p, std::size_t n, const std::string& where,
                   std::vector<CellDiagnostic>& problems) {
  if (p.weights.size() != n) {
    problems.push_back({where, 0, 0, "expected " + std::to_string(n) + " weights"});
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p.weights[i] > 0.0) || !std::isfinite(p.weights[i])) {
      problems.push_back({where, i, i, "base weight must be positive"});
    }
  }
  if (!p.bias.empty()) {
    if (p.bias.size() != n) {
      problems.push_back({where, 0, 0, "bias must be empty or " + std::to_string(n) + "x" + std::to_string(n)});
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (p.bias[i].size() != n) {
        problems.push_back({where, i, 0, "bias row has wrong length"});
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(p.bias[i][j])) problems.push_back({where, i, j, "bias must be finite"});
      }
    }
  }
}

double bias_at(const MatrixProfile& p, std::size_t i, std::size_t j) {
  return p.bias.empty() ? 0.0 : p.bias[i][j];
}

}  // namespace

void AgentProfile::validate(const Hierarchy& h) const {
  std::vector<CellDiagnostic> problems;
  const std::string prefix = id.empty() ? "agent" : id;
  check_profile(criteria, h.criteria.size(), prefix + "/criteria", problems);
  if (alternatives.size() != h.criteria.size()) {
    problems.push_back({prefix + "/alternatives", 0, 0, "need one profile per criterion"});
  } else {
    for (std::size_t k = 0; k < alternatives.size(); ++k) {
      check_profile(alternatives[k], h.alternatives.size(),
                    prefix + "/" + alternatives_matrix_name(h.criteria[k]), problems);
    }
  }
  if (!(noise_level >= 0.0) || !std::isfinite(noise_level)) {
    problems.push_back({prefix, 0, 0, "noise_level must be >= 0"});
  }
  if (!(compliance >= 0.0 && compliance <= 1.0)) {
    problems.push_back({prefix, 0, 0, "compliance must be in [0, 1]"});
  }
  if (!problems.empty()) throw ValidationError("invalid agent profile", std::move(problems));
}

Hierarchy SimulationConfig::hierarchy() const {
  Hierarchy h{{"goal", "simulated decision"}, {}, {}};
  for (std::size_t i = 0; i < criteria; ++i) h.criteria.push_back("c" + std::to_string(i + 1));
  for (std::size_t i = 0; i < alternatives; ++i) h.alternatives.push_back("a" + std::to_string(i + 1));
  return h;
}

void SimulationConfig::validate() const {
  auto in_caps = [](std::size_t n) { return n >= kMinItems && n <= kMaxItems; };
  if (!in_caps(criteria) || !in_caps(alternatives)) {
    throw DomainError("simulation shape must have 2..10 criteria and alternatives");
  }
  if (agents.size() < 2) throw DomainError("simulation needs at least two agents");
  if (replications < 1) throw DomainError("simulation needs at least one replication");
  stop_rule.validate();
  const Hierarchy h = hierarchy();
  std::vector<DecisionMaker> members;
  for (const auto& a : agents) {
    a.validate(h);
    members.push_back({a.id, a.id});
  }
  validate_members(members);
}

SimulationRng::SimulationRng(std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t v : stream) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

double SimulationRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SimulationRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

ComparisonMatrix generate_matrix(const MatrixProfile& profile, std::vector<std::string> labels,
                                 double noise_level, SimulationRng& rng) {
  const std::size_t n = profile.weights.size();
  std::vector<SaatyValue> upper;
  upper.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Always draw so the stream layout does not depend on the noise level.
      const double z = rng.normal();
      const double log_ratio = std::log(profile.weights[i] / profile.weights[j]) +
                               bias_at(profile, i, j) + noise_level * z;
      upper.push_back(SaatyValue::snap(std::exp(log_ratio)));
    }
  }
  return ComparisonMatrix::from_upper(std::move(labels), upper);
}

FullEvaluation generate_judgments(const AgentProfile& profile, const Hierarchy& h,
                                  SimulationRng& rng) {
  profile.validate(h);
  FullEvaluation e{generate_matrix(profile.criteria, h.criteria, profile.noise_level, rng), {}};
  for (const auto& alt : profile.alternatives) {
    e.alternatives.push_back(generate_matrix(alt, h.alternatives, profile.noise_level, rng));
  }
  return e;
}

FullEvaluation generate_judgments(const AgentProfile& profile, const Hierarchy& h,
                                  std::uint64_t seed) {
  SimulationRng rng({seed});
  return generate_judgments(profile, h, rng);
}

ComparisonMatrix consensus_pull(const ComparisonMatrix& own, const RealMatrix& aggregate,
                                double compliance) {
  if (!(compliance >= 0.0 && compliance <= 1.0)) throw DomainError("compliance must be in [0, 1]");
  const std::size_t n = own.size();
  if (aggregate.size() != n) throw StructuralError("aggregate and own matrix differ in order");
  std::vector<SaatyValue> upper;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double pulled = (1.0 - compliance) * std::log(own(i, j).to_double()) +
                            compliance * std::log(aggregate(i, j));
      upper.push_back(SaatyValue::snap(std::exp(pulled)));
    }
  }
  return ComparisonMatrix::from_upper(own.labels(), upper);
}

FullEvaluation consensus_pull_revision(const FullEvaluation& own, const RealEvaluation& aggregate,
                                       double compliance) {
  if (own.alternatives.size() != aggregate.alternatives.size()) {
    throw StructuralError("aggregate and own evaluation differ in shape");
  }
  FullEvaluation out{consensus_pull(own.criteria, aggregate.criteria, compliance), {}};
  for (std::size_t k = 0; k < own.alternatives.size(); ++k) {
    out.alternatives.push_back(consensus_pull(own.alternatives[k], aggregate.alternatives[k], compliance));
  }
  return out;
}

ReplicationResult run_replication(const SimulationConfig& cfg, std::size_t replication) {
  const Hierarchy h = cfg.hierarchy();
  std::vector<DecisionMaker> members;
  for (const auto& a : cfg.agents) members.push_back({a.id, a.id});
  Session session = Session::start(h, members, cfg.stop_rule);

  for (std::size_t k = 0; k < cfg.agents.size(); ++k) {
    SimulationRng rng({cfg.seed, replication, k});
    session.submit(cfg.agents[k].id, generate_judgments(cfg.agents[k], h, rng));
  }
  session.advance();
  while (!session.finished()) {
    const RealEvaluation aggregate = aggregate_judgments(h, session.judgment_sets());
    const std::vector<std::string> targets = session.targets();
    for (const auto& target : targets) {
      const AgentProfile* agent = nullptr;
      for (const auto& a : cfg.agents) {
        if (a.id == target) agent = &a;
      }
      session.submit(target, consensus_pull_revision(session.judgments(target), aggregate,
                                                     agent->compliance));
    }
    session.advance();
  }

  ReplicationResult out;
  out.replication = replication;
  out.trajectory = session_trajectory(session);
  out.initial_cr = session.log().front().group_cr_before;
  out.final_cr = session.log().back().group_cr_after;
  out.outcome = session.phase();
  out.events = session.events();
  return out;
}

SimulationResult run_simulation(const SimulationConfig& cfg) {
  cfg.validate();
  SimulationResult result;
  for (std::size_t r = 0; r < cfg.replications; ++r) result.runs.push_back(run_replication(cfg, r));

  for (const auto& run : result.runs) {
    result.mean_initial_cr += run.initial_cr;
    result.mean_final_cr += run.final_cr;
    for (const auto& p : run.trajectory) {
      if (result.summary.size() < p.round) result.summary.resize(p.round);
      RoundSummary& s = result.summary[p.round - 1];
      s.round = p.round;
      s.mean_cr += p.group_cr;
      ++s.replications;
    }
  }
  const auto runs = static_cast<double>(result.runs.size());
  result.mean_initial_cr /= runs;
  result.mean_final_cr /= runs;
  for (auto& s : result.summary) s.mean_cr /= static_cast<double>(s.replications);
  return result;
}

}  // namespace stepahp
