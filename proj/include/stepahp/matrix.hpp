#pragma once
// Pairwise comparison matrices.
//
// ComparisonMatrix holds exact rational judgments as entered by a decision
// maker. It can represent invalid input so that validate() can report every
// offending cell. RealMatrix is the floating-point form used by the numerics
// and by group aggregates, whose entries are generally off the Saaty grid.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stepahp/errors.hpp"
#include "stepahp/rational.hpp"
#include "stepahp/saaty.hpp"

namespace stepahp {

inline constexpr std::size_t kMinItems = 2;
inline constexpr std::size_t kMaxItems = 10;

std::vector<std::string> default_labels(std::size_t n);

class RealMatrix {
 public:
  RealMatrix() = default;
  // Throws StructuralError unless entries is n x n with 1 <= n <= kMaxItems
  // and labels.size() == n.
  RealMatrix(std::vector<std::string> labels, const std::vector<std::vector<double>>& entries);
  RealMatrix(std::vector<std::string> labels, std::vector<double> row_major);

  // Raw consistent matrix a_ij = w_i / w_j (no grid snapping).
  static RealMatrix from_ratios(std::span<const double> weights);

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  std::span<const double> row_major() const noexcept { return data_; }

  RealMatrix permuted(std::span<const std::size_t> perm) const;
  RealMatrix transposed() const;

  bool operator==(const RealMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> data_;
};

class ComparisonMatrix {
 public:
  ComparisonMatrix() = default;
  // Structural checks only (square, kMinItems <= n <= kMaxItems, labels
  // match); invariants are checked by validate().
  ComparisonMatrix(std::vector<std::string> labels, std::vector<std::vector<Rational>> entries);

  // Reciprocal matrix from the strict upper triangle, row by row:
  // (0,1), (0,2), ..., (0,n-1), (1,2), ...
  static ComparisonMatrix from_upper(std::vector<std::string> labels,
                                     std::span<const SaatyValue> upper);
  static ComparisonMatrix uniform(std::vector<std::string> labels);

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<Rational>>& entries() const noexcept { return entries_; }

  // Sets (i,j) and mirrors the reciprocal into (j,i).
  void set(std::size_t i, std::size_t j, SaatyValue v);

  // Every violated cell: diagonal != 1, off-grid value, broken reciprocity.
  // Empty means valid. `name` is copied into each diagnostic.
  std::vector<CellDiagnostic> validate(const std::string& name = "matrix") const;
  bool is_valid() const { return validate().empty(); }
  // Throws ValidationError carrying the diagnostics when invalid.
  void require_valid(const std::string& name = "matrix") const;

  // Off-diagonal entry as a grid value; only meaningful on a valid matrix.
  SaatyValue saaty(std::size_t i, std::size_t j) const;

  RealMatrix to_real() const;
  ComparisonMatrix permuted(std::span<const std::size_t> perm) const;
  ComparisonMatrix transposed() const;

  bool operator==(const ComparisonMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> entries_;
};

}  // namespace stepahp
