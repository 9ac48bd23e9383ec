// Copyright 2026 The lams Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
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

namespace lams {

enum class OutputFormat { Text, Json };

// Exit statuses of runCommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;  // parse or type error
inline constexpr int kExitPropertyFailure = 2;
inline constexpr int kExitFuel = 3;

struct CliConfig {
    std::string command;              // check | run | trace | sem | diff | test | equiv
    std::vector<std::string> terms;   // inline -e terms, in order
    std::vector<std::string> files;   // .lams sources; each contributes its `main`
    long fuel = 100000;
    double tol = 1e-9;
    OutputFormat format = OutputFormat::Text;
    uint64_t seed = 0xC0FFEE;
    int depth = 2;                    // equiv context depth
    int trials = 100;                 // test
    std::string suite = "all";        // test
    bool tree = false;                // check: print the canonical derivation
    bool tolGiven = false;            // test keeps each suite's own tolerance otherwise
};

// Throws std::invalid_argument when fuel, tol, depth or trials is out of range.
void validate(const CliConfig& cfg);

// Dispatches one command. Normal output goes to `out`, diagnostics to `err`.
int runCommand(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// argv front end; owns flag parsing and usage text.
int cliMain(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lams
