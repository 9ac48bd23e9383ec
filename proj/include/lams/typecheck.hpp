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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lams/dist.hpp"
#include "lams/term.hpp"
#include "lams/type.hpp"

namespace lams {

using Context = std::map<std::string, TypePtr>;
using ContextPtr = std::shared_ptr<const Context>;

enum class Rule {
    Ax, Ax0, AxKet0, AxKet1, AxUnit,
    AlphaI, SumI, SI, SE, If,
    ArrI, ArrE, ArrES,
    ProdI, ProdEr, ProdEl,
    CastR, CastL, Par
};

std::string ruleName(Rule r);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

// Conclusion ctx |- term : type. `probs` is used only by Par, whose
// premises type the branches of `dist`.
struct Derivation {
    Rule rule;
    ContextPtr ctx;
    TermPtr term;
    TypePtr type;
    std::vector<DerivPtr> premises;
    std::vector<double> probs;
};

struct InferResult {
    TypePtr type;
    std::map<std::string, int> usage;  // free-variable occurrence counts
};

// Usage counting: every non-basis binding is used exactly once, sums and
// products split their linear variables, both conditional branches consume
// the same linear variables. Throws LinearityViolation.
std::map<std::string, int> checkLinearity(const Context& ctx, const TermPtr& t);

// Minimal type: the fewest outer S liftings at every position.
InferResult inferType(const Context& ctx, const TermPtr& t);

// Least type reachable from both by prepending S; NoJoin otherwise.
TypePtr joinTypes(const TypePtr& a, const TypePtr& b);

// Canonical derivation of ctx |- t : a. S_I is pushed towards the root, so the
// tree is a normal form of the derivation-tree commutations (see isCanonical).
DerivPtr checkType(const Context& ctx, const TermPtr& t, const TypePtr& a);

// checkType at the minimal type.
DerivPtr deriveMinimal(const Context& ctx, const TermPtr& t);

// Par over the branches; a point distribution yields the branch derivation.
DerivPtr checkDist(const Context& ctx, const Dist<TermPtr>& d, const TypePtr& a);

// Closed-term convenience: minimal type or the typing error.
TypePtr typeOf(const TermPtr& t);

// Whether `t` is derivable at `a` in `ctx` (no linearity check).
bool derivableAt(const Context& ctx, const TermPtr& t, const TypePtr& a);

// True when no S_I in the tree can be lifted further towards the root.
bool isCanonical(const DerivPtr& d);

// Pretty tree, one rule per line, for diagnostics and the CLI.
std::string printDerivation(const DerivPtr& d);

// Every rule tag occurring in the tree.
void collectRules(const DerivPtr& d, std::vector<Rule>& out);

}  // namespace lams
