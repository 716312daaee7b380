#include "stepahp/consistency.hpp"

#include <algorithm>
#include <cmath>

#include "stepahp/errors.hpp"

namespace stepahp {

namespace {

constexpr double kTieTolerance = 1e-12;

bool greater(double a, double b) { return a > b + kTieTolerance; }

void normalize(std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  for (double& x : v) x /= sum;
}

std::vector<double> power_iteration(const RealMatrix& m, const PowerIterationOptions& opts) {
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * x[j];
      y[i] = acc;
    }
    normalize(y);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(y[i] - x[i]));
    x.swap(y);
    if (change < opts.tolerance) return x;
  }
  throw NumericalError("power iteration did not converge after " +
                           std::to_string(opts.max_iterations) + " iterations",
                       opts.max_iterations);
}

std::vector<double> row_geometric_means(const RealMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_sum += std::log(m(i, j));
    w[i] = std::exp(log_sum / static_cast<double>(n));
  }
  normalize(w);
  return w;
}

void require_positive(const RealMatrix& m) {
  for (double a : m.row_major()) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("matrix entries must be positive and finite");
  }
}

template <typename Greater>
std::vector<IndexTriple> enumerate_violations(std::size_t n, Greater&& dominates) {
  std::vector<IndexTriple> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !dominates(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (dominates(j, k) && !dominates(i, k)) out.push_back({i, j, k});
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(PriorityMethod m) {
  return m == PriorityMethod::kEigenvector ? "eigenvector" : "geometric-mean";
}

PriorityMethod parse_priority_method(std::string_view text) {
  if (text == "eigenvector") return PriorityMethod::kEigenvector;
  if (text == "geometric-mean") return PriorityMethod::kGeometricMean;
  throw DomainError("unknown priority method '" + std::string(text) + "'");
}

PriorityVector derive_priorities(const RealMatrix& m, PriorityMethod method,
                                 const PowerIterationOptions& opts) {
  require_positive(m);
  PriorityVector out;
  out.method = method;
  out.weights = method == PriorityMethod::kEigenvector ? power_iteration(m, opts)
                                                       : row_geometric_means(m);
  return out;
}

PriorityVector derive_priorities(const ComparisonMatrix& m, PriorityMethod method,
                                 const PowerIterationOptions& opts) {
  m.require_valid();
  return derive_priorities(m.to_real(), method, opts);
}

double lambda_max(const RealMatrix& m, const PriorityVector& w) {
  const std::size_t n = m.size();
  if (w.weights.size() != n) throw DomainError("priority vector size does not match matrix order");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w.weights[i] > 0.0)) throw DomainError("lambda_max needs strictly positive weights");
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += m(i, j) * w.weights[j];
    sum += row / w.weights[i];
  }
  return sum / static_cast<double>(n);
}

double lambda_max(const ComparisonMatrix& m, const PriorityVector& w) {
  return lambda_max(m.to_real(), w);
}

std::vector<IndexTriple> ordinal_violations(const PriorityVector& w) {
  const auto& v = w.weights;
  return enumerate_violations(v.size(), [&](std::size_t a, std::size_t b) { return greater(v[a], v[b]); });
}

std::vector<IndexTriple> ordinal_violations(const ComparisonMatrix& m) {
  const Rational one(1);
  return enumerate_violations(m.size(), [&](std::size_t a, std::size_t b) { return m(a, b) > one; });
}

std::vector<IndexTriple> ordinal_violations(const RealMatrix& m) {
  return enumerate_violations(m.size(), [&](std::size_t a, std::size_t b) { return greater(m(a, b), 1.0); });
}

ConsistencyReport consistency_report(const RealMatrix& m, const PowerIterationOptions& opts) {
  ConsistencyReport r;
  r.n = m.size();
  r.priorities = derive_priorities(m, PriorityMethod::kEigenvector, opts);
  r.lambda_max = lambda_max(m, r.priorities);
  if (r.n > 1) {
    // Rounding can leave a consistent matrix a few ulps below n.
    r.ci = std::max(0.0, (r.lambda_max - static_cast<double>(r.n)) / static_cast<double>(r.n - 1));
  }
  r.ri = random_index(r.n);
  r.cr_defined = r.ri > 0.0;
  r.cr = r.cr_defined ? r.ci / r.ri : 0.0;
  r.ordinal_violations = ordinal_violations(r.priorities);
  r.judgment_violations = ordinal_violations(m);
  return r;
}

ConsistencyReport consistency_report(const ComparisonMatrix& m, const PowerIterationOptions& opts) {
  m.require_valid();
  ConsistencyReport r = consistency_report(m.to_real(), opts);
  r.judgment_violations = ordinal_violations(m);
  return r;
}

}  // namespace stepahp
