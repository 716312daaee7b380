#pragma once
// Shared helpers for the test binaries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stepahp/io.hpp"

namespace stepahp::testing {

inline std::string fixture_path(const std::string& name) { return std::string(STEPAHP_FIXTURES_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) { return io::read_file(fixture_path(name)); }

inline Hierarchy small_hierarchy(std::size_t criteria = 3, std::size_t alternatives = 3) {
  Hierarchy h{{"goal", "Goal"}, {}, {}};
  for (std::size_t i = 0; i < criteria; ++i) h.criteria.push_back("c" + std::to_string(i + 1));
  for (std::size_t i = 0; i < alternatives; ++i) h.alternatives.push_back("a" + std::to_string(i + 1));
  return h;
}

inline ComparisonMatrix random_saaty_matrix(std::vector<std::string> labels, std::mt19937_64& rng) {
  const auto scale = SaatyValue::all();
  std::uniform_int_distribution<std::size_t> pick(0, scale.size() - 1);
  ComparisonMatrix m = ComparisonMatrix::uniform(std::move(labels));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) m.set(i, j, scale[pick(rng)]);
  }
  return m;
}

inline ComparisonMatrix random_saaty_matrix(std::size_t n, std::mt19937_64& rng) {
  return random_saaty_matrix(default_labels(n), rng);
}

inline FullEvaluation random_evaluation(const Hierarchy& h, std::mt19937_64& rng) {
  FullEvaluation e{random_saaty_matrix(h.criteria, rng), {}};
  for (std::size_t j = 0; j < h.criteria.size(); ++j) e.alternatives.push_back(random_saaty_matrix(h.alternatives, rng));
  return e;
}

inline FullEvaluation uniform_evaluation(const Hierarchy& h) {
  FullEvaluation e{ComparisonMatrix::uniform(h.criteria), {}};
  for (std::size_t j = 0; j < h.criteria.size(); ++j) e.alternatives.push_back(ComparisonMatrix::uniform(h.alternatives));
  return e;
}

inline std::vector<DecisionMaker> members_named(const std::vector<std::string>& ids) {
  std::vector<DecisionMaker> out;
  for (const auto& id : ids) out.push_back({id, id});
  return out;
}

}  // namespace stepahp::testing
