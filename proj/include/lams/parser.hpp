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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lams/term.hpp"
#include "lams/type.hpp"

namespace lams {

// A `.lams` file: `def name = term;` lines and an optional `main = term;`.
// Definitions are closed and macro-expanded in order.
struct SourceProgram {
    std::vector<std::pair<std::string, TermPtr>> defs;
    TermPtr main;  // null when absent
};

struct ParseOptions {
    // Closed-program parsing rejects unbound names; tests may allow them.
    bool allowFreeVars = false;
    const std::map<std::string, TermPtr>* defs = nullptr;
};

TermPtr parseTerm(const std::string& text, const ParseOptions& opts = {});
TypePtr parseType(const std::string& text);
SourceProgram parseProgram(const std::string& text);

// A scalar literal as accepted before `.`, e.g. `1/sqrt(2)`, `(0.5-2i)`.
Scalar parseScalar(const std::string& text);

}  // namespace lams
