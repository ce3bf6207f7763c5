// Copyright 2026 The hexroute Authors
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

#ifndef HEXROUTE_TOOLS_CLI_H
#define HEXROUTE_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace hexroute::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kParseError = 2,
    kValidationError = 3,
};

/// Runs the command line with `args` (excluding the program name). Data goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "2..7" or "2,3,5" (or a mix such as "2..4,7").
std::vector<size_t> parse_sizes(const std::string &text);

}  // namespace hexroute::cli

#endif
