// Copyright 2026 The kdcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kdcalc::cli {

inline constexpr const char *kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    /// A self-check or scenario verification ran but did not pass.
    kCheckFailed = 1,
    kInputError = 2,
    kDimensionMismatch = 3,
    kDomainError = 4,
};

/// Runs the command line `args` (without the program name). The result
/// envelope goes to `out`, diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace kdcalc::cli
