#pragma once

#include <iosfwd>

namespace ltar {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
};

/// Entry point of the `ltar` tool. Data goes to `out` (or the files named by
/// --out), every diagnostic to `err` as a single line.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace ltar
