#pragma once

#include <iosfwd>

namespace lincvx {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitPass = 0,
  kExitFail = 1,
  kExitUsage = 2,
  kExitInconclusive = 3,
  kExitIo = 4,
};

// Entry point of the `lincvx` tool: check, defect, discs, hull, pipeline.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lincvx
