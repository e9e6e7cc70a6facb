#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2 };

/// Runs one command (`build-op`, `ess-spectrum`, `gelfand-eval`,
/// `check-identity`, `check-commutator`, `series`, `eigs`). args excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
