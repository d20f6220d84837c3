// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stit {

enum ExitCode : int { kExitOk = 0, kExitVerifyFail = 1, kExitConfig = 2, kExitRuntime = 3 };

/// Entry point of the `stit` command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stit
