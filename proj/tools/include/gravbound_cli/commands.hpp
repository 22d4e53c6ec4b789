// Copyright 2026 The gravbound Authors.
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

#ifndef GRAVBOUND_CLI_COMMANDS_HPP_
#define GRAVBOUND_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace gravbound::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the directory for outputs written without an
// explicit --out.
inline constexpr const char* kOutDirEnv = "GRAVBOUND_OUT_DIR";

// Runs `gravbound <args...>` (args excludes the program name). Errors are
// reported as a single line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gravbound::cli

#endif  // GRAVBOUND_CLI_COMMANDS_HPP_
