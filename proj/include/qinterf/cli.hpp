// Copyright 2026 The qinterf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QINTERF_CLI_HPP
#define QINTERF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qinterf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the qinterf binary; args excludes the program name.
// Subcommands: mc, moments, verify, table1, grid, fit.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "inf" (any case, optional sign '+') maps to the zero-temperature marker.
double parse_temperature(const std::string& text);

// "a", "a,b,c", "a:b", "a:b:step" or "a:b:log" (doubling).
std::vector<int> parse_int_range(const std::string& text);

// QINTERF_WORKERS if set and valid, else the hardware concurrency (>= 1).
int default_workers();

}  // namespace qinterf

#endif  // QINTERF_CLI_HPP
