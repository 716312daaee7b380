#pragma once
// Synthetic decision makers driven through a step-wise session.
//
// Each agent holds latent priorities per matrix. Judgments are the
// consistent ratios w_i / w_j skewed by a per-cell bias and multiplicative
// log-normal noise, snapped to the Saaty grid. When targeted for revision an
// agent moves each judgment toward the group aggregate in log space by its
// compliance factor.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "stepahp/protocol.hpp"

namespace stepahp {

struct MatrixProfile {
  std::vector<double> weights;
  // Log-space skew per cell (only i < j is read); empty means none.
  std::vector<std::vector<double>> bias;
  bool operator==(const MatrixProfile&) const = default;
};

struct AgentProfile {
  std::string id;
  MatrixProfile criteria;
  std::vector<MatrixProfile> alternatives;  // one per criterion
  double noise_level = 0.0;                 // sigma of the log-normal noise
  double compliance = 0.5;                  // 0 = ignore the group, 1 = adopt it

  // Throws ValidationError when shapes disagree with h or values are out
  // of range.
  void validate(const Hierarchy& h) const;
  bool operator==(const AgentProfile&) const = default;
};

struct SimulationConfig {
  std::size_t criteria = 3;
  std::size_t alternatives = 3;
  std::vector<AgentProfile> agents;
  StopRule stop_rule;
  std::uint64_t seed = 0;
  std::size_t replications = 1;

  // Ids c1..cN, a1..aN under goal "goal".
  Hierarchy hierarchy() const;
  // Throws DomainError for shapes outside the matrix caps or < 2 agents,
  // ValidationError for bad profiles.
  void validate() const;
  bool operator==(const SimulationConfig&) const = default;
};

// mt19937_64 seeded through std::seed_seq with a hand-rolled Box-Muller
// normal, so draws are identical across standard library implementations.
class SimulationRng {
 public:
  explicit SimulationRng(std::initializer_list<std::uint64_t> stream);
  double normal();
  double uniform();  // [0, 1)

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// One matrix of judgments from latent weights (see file comment).
ComparisonMatrix generate_matrix(const MatrixProfile& profile, std::vector<std::string> labels,
                                 double noise_level, SimulationRng& rng);
FullEvaluation generate_judgments(const AgentProfile& profile, const Hierarchy& h,
                                  SimulationRng& rng);
FullEvaluation generate_judgments(const AgentProfile& profile, const Hierarchy& h,
                                  std::uint64_t seed);

// Cell-wise exp((1 - c) ln own + c ln aggregate), snapped and mirrored.
ComparisonMatrix consensus_pull(const ComparisonMatrix& own, const RealMatrix& aggregate,
                                double compliance);
FullEvaluation consensus_pull_revision(const FullEvaluation& own, const RealEvaluation& aggregate,
                                       double compliance);

struct ReplicationResult {
  std::size_t replication = 0;
  std::vector<TrajectoryPoint> trajectory;
  double initial_cr = 0.0;
  double final_cr = 0.0;  // CR of the judgments held at the end
  Phase outcome = Phase::kCollecting;
  std::vector<SessionEvent> events;
};

struct RoundSummary {
  std::size_t round = 0;
  double mean_cr = 0.0;
  std::size_t replications = 0;  // how many runs reached this round
  bool operator==(const RoundSummary&) const = default;
};

struct SimulationResult {
  std::vector<ReplicationResult> runs;
  std::vector<RoundSummary> summary;
  double mean_initial_cr = 0.0;
  double mean_final_cr = 0.0;
};

ReplicationResult run_replication(const SimulationConfig& cfg, std::size_t replication);
SimulationResult run_simulation(const SimulationConfig& cfg);

}  // namespace stepahp
