// Copyright 2026 The Procflow Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace procflow::cli {

// Exit codes shared by every subcommand.
//   0  success: evaluation done, diagrams equal, demo property holds
//   1  negative result: diagrams distinct, demo property fails, check error
//   2  file could not be parsed
//   3  unknown name or boundary type mismatch
//   4  model or theory mismatch, shape errors
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitType = 3;
inline constexpr int kExitModel = 4;

// Runs the tool on argv-style arguments (program name excluded), writing
// results to `out` and diagnostics to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Built-in demonstrations; each returns true when the property it
// demonstrates holds. `seed` drives every random choice.
bool demo_teleport(std::uint64_t seed, bool json, std::ostream& out);
bool demo_rel_counterexample(bool json, std::ostream& out);
bool demo_no_broadcast(bool json, std::ostream& out);
bool demo_phases(std::uint64_t seed, bool json, std::ostream& out);

}  // namespace procflow::cli
