#pragma once

// Command-line front end.  Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 solver infeasibility.

#include <iosfwd>
#include <string>

#include "qcopy/repro.hpp"

namespace qcopy {

enum ExitCode : int { kExitOk = 0, kExitVerification = 1, kExitUsage = 2, kExitInfeasible = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Body of `reproduce`; format is "text", "json" or "csv".
int run_reproduce(std::ostream& out, const std::string& format, const Tamper& tamper = {});

}  // namespace qcopy
