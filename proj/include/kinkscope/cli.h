// Copyright 2026 The Kinkscope Authors
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

// The `kinkscope` command line: predict, simulate, compare, sweep.

#ifndef KINKSCOPE_CLI_H_
#define KINKSCOPE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace kinkscope::cli {

inline constexpr const char* kReportSchemaVersion = "kinkscope.report/1";
inline constexpr const char* kSeedEnvVar = "KINKSCOPE_SEED";

enum ExitCode : int {
  kExitOk = 0,
  kExitStatisticalFailure = 1,
  kExitUsage = 2,
  kExitOutOfTheoryRange = 3,
  kExitIo = 4,
};

// Runs the CLI with `args` (program name excluded). Reports go to `out`,
// diagnostics to `err`. Returns the process exit code.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Expands "2..5,8" into {2, 3, 4, 5, 8}. Throws InvalidArgument.
std::vector<std::size_t> ParseWidthList(const std::string& text);

}  // namespace kinkscope::cli

#endif  // KINKSCOPE_CLI_H_
