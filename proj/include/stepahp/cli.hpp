#pragma once
// Command-line front end.
//
//   stepahp validate FILE...
//   stepahp solve --hierarchy H --judgments J [--method M]
//   stepahp group --hierarchy H --judgments J... [--revision R...] [stop rule flags]
//   stepahp simulate --config C [--seed S] [--replications N]
//   stepahp serve [--bind ADDR] [--port P] [--store DIR]
//
// Exit codes are stable and part of the interface.

#include <iosfwd>
#include <string>
#include <vector>

namespace stepahp::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,  // also malformed documents and unsupported versions
  kNumerical = 3,
  kProtocol = 4,
  kIo = 5,
  kInternal = 6,
};

int exit_code_for(const std::exception& e);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stepahp::cli
