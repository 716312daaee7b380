#pragma once
// Exception types shared by every stepahp module. Each class maps to one
// failure category (and one CLI exit code / HTTP status class).

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stepahp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input has the wrong shape to even be checked (non-square, n < 2, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A single problem with one cell of one matrix. `matrix` names the matrix
// ("criteria", "alternatives/<criterion>", optionally prefixed by a member).
struct CellDiagnostic {
  std::string matrix;
  std::size_t row = 0;
  std::size_t col = 0;
  std::string reason;

  std::string to_string() const;
  bool operator==(const CellDiagnostic&) const = default;
};

// Invariant violations with cell-level diagnostics.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<CellDiagnostic> cells = {});
  const std::vector<CellDiagnostic>& cells() const noexcept { return cells_; }

 private:
  std::vector<CellDiagnostic> cells_;
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::size_t iterations)
      : Error(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

// Argument outside the domain of a function (n out of range, weight <= 0,
// too few members, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation issued out of order for the current protocol phase.
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, std::vector<std::string> members = {})
      : Error(what), members_(std::move(members)) {}
  // Member ids relevant to the failure (e.g. those still missing).
  const std::vector<std::string>& members() const noexcept { return members_; }

 private:
  std::vector<std::string> members_;
};

// Document text is not well-formed (bad JSON, wrong field types, float
// where a rational string is required, unknown kind).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Envelope version differs from the one this build reads.
class VersionError : public Error {
 public:
  VersionError(const std::string& found, const std::string& expected);
  const std::string& found() const noexcept { return found_; }

 private:
  std::string found_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stepahp
