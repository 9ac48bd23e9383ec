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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lams/dist.hpp"
#include "lams/error.hpp"
#include "lams/term.hpp"
#include "lams/type.hpp"
#include "lams/typecheck.hpp"

namespace lams {

using Position = std::vector<int>;  // child indices from the root

// One rewrite step on a whole term: `result` is the distribution over
// complete terms obtained by rewriting the redex at `position`.
struct Redex {
    std::string rule;
    Position position;
    Dist<TermPtr> result;
};

struct StepResult {
    bool normal = true;
    Redex redex;  // meaningful when !normal
};

class FuelExhausted : public LamsError {
public:
    FuelExhausted(Dist<TermPtr> partial, long steps)
        : LamsError("FuelExhausted", "fuel exhausted after " + std::to_string(steps) + " steps"),
          partial_(std::move(partial)),
          steps_(steps) {}
    const Dist<TermPtr>& partial() const { return partial_; }
    long steps() const { return steps_; }

private:
    Dist<TermPtr> partial_;
    long steps_;
};

// Holds the type cache of closed subterms; reuse one engine across the steps
// of a single reduction. Not thread-safe; use one engine per thread.
class Engine {
public:
    // Deterministic strategy: innermost-leftmost within the contexts allowed
    // by the contextual rules, except that operands of eliminators are only
    // reduced until they are values, after which the eliminator fires.
    // `a` is the type the term is held at (default: its minimal type); rules
    // that introduce zero(-) read their annotation off that typing, so the
    // reduct stays typable at `a`.
    StepResult step(const TermPtr& t, const TypePtr& a = nullptr);

    // Every (position, rule) pair applicable in `t`; used by randomized
    // strategies. Positions follow the contextual rules.
    std::vector<Redex> allRedexes(const TermPtr& t, const TypePtr& a = nullptr);

    // Minimal type of a closed subterm, memoized. Throws StuckIllTyped.
    TypePtr typeOfClosed(const TermPtr& t);

private:
    struct Local {
        std::string rule;
        Dist<TermPtr> out;
    };
    void reset(const TermPtr& t, const TypePtr& a);
    std::optional<std::pair<Local, Position>> stepAt(const TermPtr& t, Position& pos);
    void rootRules(const TermPtr& t, const Position& pos, std::vector<Local>& out, bool firstOnly);
    void collect(const TermPtr& t, Position& pos, std::vector<std::pair<Local, Position>>& out);
    // Type of the subterm at `pos` in the derivation of the root; null when
    // the root does not typecheck.
    TypePtr typeAt(const Position& pos);
    // Annotation for a zero produced at `pos`; `fallback` is the minimal-type
    // guess used when the typing is unavailable.
    TypePtr zeroAnnot(const Position& pos, const TypePtr& fallback);

    std::map<const Term*, std::pair<TermPtr, TypePtr>> typeCache_;
    TermPtr root_;
    TypePtr rootType_;
    DerivPtr rootDeriv_;
    bool derivTried_ = false;
};

StepResult step(const TermPtr& t, const TypePtr& a = nullptr);

// Projective measurement of the first j qubits of a normal ket sum.
Dist<TermPtr> measureProject(int j, const TermPtr& t);

struct TraceStep {
    std::string rule;
    Position position;
    Dist<TermPtr> dist;  // the whole distribution after the step
};

// Chooses which redex to fire; receives the candidates of one branch.
using RedexChooser = std::function<size_t(const std::vector<Redex>&)>;

// `type` defaults to the minimal type of `t`; every branch is held at it.
Dist<TermPtr> normalize(const TermPtr& t, long fuel = 100000, long* stepsOut = nullptr, const TypePtr& type = nullptr);
std::vector<TraceStep> traceReduction(const TermPtr& t, long fuel = 100000, const TypePtr& type = nullptr);
// Reduction driven by `choose` over allRedexes instead of the fixed strategy.
Dist<TermPtr> normalizeWith(const TermPtr& t, long fuel, const RedexChooser& choose, long* stepsOut = nullptr,
                            const TypePtr& type = nullptr);

std::string printPosition(const Position& p);

}  // namespace lams
