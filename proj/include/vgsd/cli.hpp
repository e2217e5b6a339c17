#pragma once

#include <iosfwd>

namespace vgsd {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitQuadrature = 3,
  kExitEigensolver = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vgsd
