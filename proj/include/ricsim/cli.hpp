// Copyright 2026 The ricsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ricsim::cli {

inline constexpr std::string_view kToolName = "ricsim";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitProtocolFailure = 1,
  kExitUsage = 2,
};

/// Runs the tool with `args` (excluding the program name). Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ricsim::cli
