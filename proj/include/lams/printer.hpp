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

#include <string>

#include "lams/dist.hpp"
#include "lams/term.hpp"

namespace lams {

// `factor` prints a sum whose summands share one scalar as c.(t1 + ... + tn).
// That form re-parses to a term that reduces to the printed one, not to a
// termEq-equal term, so it is reserved for human-facing output.
struct PrintStyle {
    int decimals = 10;
    bool factor = false;
};

// With the default style the output re-parses to a termEq-equal term. Scalars
// are printed with at most `decimals` decimals, so the round trip is exact
// only up to kScalarTol at 10 and bit-exact at 17.
std::string printTerm(const TermPtr& t, const PrintStyle& style = {});
std::string printScalar(Scalar s, const PrintStyle& style = {});

// `2/3`-style when a denominator up to 64 matches within 1e-12.
std::string printProbability(double p);

// `[ p1: t1 || p2: t2 ]`, branches by descending probability then canonical
// term order. A point distribution prints as its payload.
std::string printDist(const Dist<TermPtr>& d, const PrintStyle& style = {});

}  // namespace lams
