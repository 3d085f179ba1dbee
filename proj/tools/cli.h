// Copyright 2026 The Traitscan Authors.
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

// Command-line front end. Kept separate from main() so tests can drive it
// in-process.

#ifndef TRAITSCAN_TOOLS_CLI_H_
#define TRAITSCAN_TOOLS_CLI_H_

#include <ostream>

namespace traitscan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

// Subcommands: recognize, extract-patterns, score, baseline, split-lines.
// Progress goes to `out`, diagnostics to `err`; score and baseline print
// their report to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace traitscan

#endif  // TRAITSCAN_TOOLS_CLI_H_
