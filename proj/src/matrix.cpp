#include "stepahp/matrix.hpp"

#include <cmath>
#include <set>

namespace stepahp {

namespace {

void check_labels(std::size_t n, const std::vector<std::string>& labels) {
  if (labels.size() != n) {
    throw StructuralError("matrix of order " + std::to_string(n) + " has " +
                          std::to_string(labels.size()) + " labels");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw StructuralError("duplicate matrix label '" + l + "'");
  }
}

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  std::vector<bool> seen(n, false);
  if (perm.size() != n) throw DomainError("permutation size does not match matrix order");
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw DomainError("not a permutation");
    seen[p] = true;
  }
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

RealMatrix::RealMatrix(std::vector<std::string> labels,
                       const std::vector<std::vector<double>>& entries)
    : n_(entries.size()), labels_(std::move(labels)) {
  if (n_ < 1 || n_ > kMaxItems) {
    throw StructuralError("matrix order must be in 1.." + std::to_string(kMaxItems));
  }
  check_labels(n_, labels_);
  data_.reserve(n_ * n_);
  for (const auto& row : entries) {
    if (row.size() != n_) throw StructuralError("matrix is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

RealMatrix::RealMatrix(std::vector<std::string> labels, std::vector<double> row_major)
    : n_(labels.size()), labels_(std::move(labels)), data_(std::move(row_major)) {
  if (n_ < 1 || n_ > kMaxItems) {
    throw StructuralError("matrix order must be in 1.." + std::to_string(kMaxItems));
  }
  if (data_.size() != n_ * n_) throw StructuralError("matrix is not square");
}

RealMatrix RealMatrix::from_ratios(std::span<const double> weights) {
  const std::size_t n = weights.size();
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("ratio weights must be positive and finite");
  }
  std::vector<double> data(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) data[i * n + j] = i == j ? 1.0 : weights[i] / weights[j];
  }
  return RealMatrix(default_labels(n), std::move(data));
}

RealMatrix RealMatrix::permuted(std::span<const std::size_t> perm) const {
  check_permutation(perm, n_);
  std::vector<std::string> labels(n_);
  std::vector<double> data(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    labels[i] = labels_[perm[i]];
    for (std::size_t j = 0; j < n_; ++j) data[i * n_ + j] = (*this)(perm[i], perm[j]);
  }
  return RealMatrix(std::move(labels), std::move(data));
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix t = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
  }
  return t;
}

ComparisonMatrix::ComparisonMatrix(std::vector<std::string> labels,
                                   std::vector<std::vector<Rational>> entries)
    : n_(entries.size()), labels_(std::move(labels)), entries_(std::move(entries)) {
  if (n_ < kMinItems || n_ > kMaxItems) {
    throw StructuralError("comparison matrix order must be in " + std::to_string(kMinItems) +
                          ".." + std::to_string(kMaxItems) + ", got " + std::to_string(n_));
  }
  for (const auto& row : entries_) {
    if (row.size() != n_) throw StructuralError("comparison matrix is not square");
  }
  check_labels(n_, labels_);
}

ComparisonMatrix ComparisonMatrix::from_upper(std::vector<std::string> labels,
                                              std::span<const SaatyValue> upper) {
  const std::size_t n = labels.size();
  if (upper.size() != n * (n - 1) / 2) {
    throw StructuralError("upper triangle of order " + std::to_string(n) + " needs " +
                          std::to_string(n * (n - 1) / 2) + " values");
  }
  ComparisonMatrix m = uniform(std::move(labels));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, upper[k++]);
  }
  return m;
}

ComparisonMatrix ComparisonMatrix::uniform(std::vector<std::string> labels) {
  const std::size_t n = labels.size();
  return ComparisonMatrix(std::move(labels),
                          std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, 1)));
}

void ComparisonMatrix::set(std::size_t i, std::size_t j, SaatyValue v) {
  if (i >= n_ || j >= n_) throw DomainError("cell index out of range");
  if (i == j) {
    if (v.value() != Rational(1)) throw DomainError("diagonal judgments must be 1");
    return;
  }
  entries_[i][j] = v.value();
  entries_[j][i] = v.reciprocal().value();
}

std::vector<CellDiagnostic> ComparisonMatrix::validate(const std::string& name) const {
  std::vector<CellDiagnostic> out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational& a = entries_[i][j];
      if (i == j) {
        if (a != Rational(1)) out.push_back({name, i, j, "diagonal entry " + a.to_string() + " != 1"});
        continue;
      }
      if (a.num() <= 0) {
        out.push_back({name, i, j, "entry " + a.to_string() + " is not positive"});
        continue;
      }
      if (!is_saaty(a)) {
        out.push_back({name, i, j, "entry " + a.to_string() + " is outside the 1-9 scale"});
        continue;
      }
      // Reported on the lower cell so each broken pair yields one diagnostic.
      const Rational& mirror = entries_[j][i];
      if (i > j && mirror.num() > 0 && a * mirror != Rational(1)) {
        out.push_back({name, i, j,
                       "entry " + a.to_string() + " is not the reciprocal of (" +
                           std::to_string(j) + "," + std::to_string(i) + ") = " +
                           mirror.to_string()});
      }
    }
  }
  return out;
}

void ComparisonMatrix::require_valid(const std::string& name) const {
  auto cells = validate(name);
  if (!cells.empty()) throw ValidationError("invalid comparison matrix '" + name + "'", std::move(cells));
}

SaatyValue ComparisonMatrix::saaty(std::size_t i, std::size_t j) const {
  auto v = SaatyValue::from_rational(entries_.at(i).at(j));
  if (!v) throw ValidationError("entry is not a Saaty value");
  return *v;
}

RealMatrix ComparisonMatrix::to_real() const {
  std::vector<double> data(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) data[i * n_ + j] = entries_[i][j].to_double();
  }
  return RealMatrix(labels_, std::move(data));
}

ComparisonMatrix ComparisonMatrix::permuted(std::span<const std::size_t> perm) const {
  check_permutation(perm, n_);
  std::vector<std::string> labels(n_);
  std::vector<std::vector<Rational>> entries(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    labels[i] = labels_[perm[i]];
    for (std::size_t j = 0; j < n_; ++j) entries[i][j] = entries_[perm[i]][perm[j]];
  }
  return ComparisonMatrix(std::move(labels), std::move(entries));
}

ComparisonMatrix ComparisonMatrix::transposed() const {
  ComparisonMatrix t = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) t.entries_[i][j] = entries_[j][i];
  }
  return t;
}

}  // namespace stepahp
