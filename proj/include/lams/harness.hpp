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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lams/rewrite.hpp"
#include "lams/semantics.hpp"
#include "lams/typecheck.hpp"

namespace lams {

// Dense amplitudes, first qubit most significant.
struct Statevector {
    int n = 0;
    std::vector<Scalar> amps;
};

// Kets, sums, scalars, zero(B^n), products (Kronecker) and casts (erased).
// Throws OutOfFragment on anything else.
Statevector statevectorEval(const TermPtr& t);

// Born probabilities of the 2^j prefixes; a zero vector yields the
// all-zeros outcome with certainty.
std::vector<double> bornProbabilities(const Statevector& s, int j);

struct GenOptions {
    int maxSpanNesting = 1;  // 1 forbids S(S ...) anywhere in generated types
    bool allowMeasurement = true;
    int maxQubits = 3;
};

struct Generated {
    TermPtr term;
    TypePtr type;
};

// Closed term built by running the typing rules backwards; deterministic in
// (seed, size, options). The result always passes checkType at `type`.
Generated genTypedTerm(uint64_t seed, int size, const GenOptions& opts = {});

// Random closed type of the kind the generator targets.
TypePtr genTargetType(uint64_t seed, const GenOptions& opts = {});

// Quantum fragment program over at most `maxQubits` qubits, typed S(B^n),
// optionally under one top-level measurement.
TermPtr genFragment(uint64_t seed, int maxQubits, bool withMeasurement);

// Pairwise agreement of rewriter, evaluator and statevector on a fragment
// program; an empty result means agreement.
std::string oracleAgreement(const TermPtr& t, double tol = 1e-9);

// Elimination context: a term with exactly one occurrence of the hole
// variable kHole whose type is observable, i.e. B^n with n >= 1 optionally
// followed by the S(B^0) phase suffix a full measurement leaves behind.
inline const char* const kHole = "[]";
struct ElimContext {
    TermPtr body;
    TypePtr type;
    TermPtr plug(const TermPtr& t) const;
};

std::vector<TermPtr> plugPool();

// Contexts of depth <= depth around a hole of type `a`.
std::vector<ElimContext> elimContexts(const TypePtr& a, int depth);

// Bounded under-approximation of operational equivalence. Outcomes are
// compared on their basis bits; the phase suffix is not observable.
bool opEquivCheck(const TermPtr& t, const TermPtr& r, int depth, long fuel = 100000);

// Inverse of one S_I commutation. Given a canonical tree whose root is S_I
// above alpha_I, +_I, =>_E or the parallel rule, returns the tree with S_I
// pushed into the premises. Null when the shape does not match.
DerivPtr commuteDerivation(const DerivPtr& d);

struct SuiteOptions {
    int maxSize = 30;
    long fuel = 100000;
    double tol = 1e-6;
    GenOptions gen;
};

struct Failure {
    int trial = 0;
    uint64_t seed = 0;
    std::string term;
    std::string type;
    std::string shrunk;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    int trials = 0;
    int passed = 0;
    int skipped = 0;
    std::vector<Failure> failures;
    double seconds = 0;
    bool ok() const { return failures.empty(); }
};

// Suites: soundness, subjectReduction, progress, normalization,
// confluenceSample, derivationIndependence, oracleAgreement.
SuiteReport runPropertySuite(const std::string& name, int trials, uint64_t seed, const SuiteOptions& opts = {});
const std::vector<std::string>& suiteNames();

// Greedy shrinking over well-typed closed candidates at `a`.
TermPtr shrinkTerm(const TermPtr& t, const TypePtr& a, const std::function<bool(const TermPtr&)>& stillFails);

std::string reportText(const SuiteReport& r);
nlohmann::json reportJson(const SuiteReport& r);

}  // namespace lams
