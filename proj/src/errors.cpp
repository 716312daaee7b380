#include "stepahp/errors.hpp"

#include <sstream>

namespace stepahp {

std::string CellDiagnostic::to_string() const {
  std::ostringstream os;
  os << matrix << "[" << row << "][" << col << "]: " << reason;
  return os.str();
}

namespace {

std::string with_cells(const std::string& what, const std::vector<CellDiagnostic>& cells) {
  if (cells.empty()) return what;
  std::ostringstream os;
  os << what;
  for (const auto& c : cells) os << "\n  " << c.to_string();
  return os.str();
}

}  // namespace

ValidationError::ValidationError(const std::string& what, std::vector<CellDiagnostic> cells)
    : Error(with_cells(what, cells)), cells_(std::move(cells)) {}

VersionError::VersionError(const std::string& found, const std::string& expected)
    : Error("format version " + found + " needs migration (this build reads " + expected + ")"),
      found_(found) {}

}  // namespace stepahp
