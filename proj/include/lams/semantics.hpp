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
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lams/dist.hpp"
#include "lams/scalar.hpp"
#include "lams/typecheck.hpp"

namespace lams {

// Concrete model. B^n values are right-nested pairs of bits, mirroring tProd;
// S A values are finite combinations over A values. Layers never collapse on
// their own: only muFlatten removes one.
enum class SemKind { Basis, Unit, Pair, Fun, Vec };

struct SemValue;
using SemPtr = std::shared_ptr<const SemValue>;
using SemDist = Dist<SemPtr>;
using SemEnv = std::map<std::string, SemPtr>;

struct Closure;

struct SemValue {
    SemKind kind;
    int bit = 0;                                 // Basis
    SemPtr left, right;                          // Pair
    std::shared_ptr<const Closure> fun;          // Fun
    std::string fingerprint;                     // Fun: merge key inside a Vec
    std::vector<std::pair<SemPtr, Scalar>> vec;  // Vec: sorted keys, no |c| <= kRuleTol
};

// Exact structural order; Fun values compare by fingerprint only.
int compareSem(const SemPtr& a, const SemPtr& b);

// Untyped structural equality with coefficient tolerance.
bool semValueEq(const SemPtr& a, const SemPtr& b, double tol);

template <>
struct DistTraits<SemPtr> {
    static bool less(const SemPtr& a, const SemPtr& b) { return compareSem(a, b) < 0; }
    static bool same(const SemPtr& a, const SemPtr& b) { return semValueEq(a, b, kRuleTol); }
};

struct SemDomain;
using SemDomainPtr = std::shared_ptr<const SemDomain>;
enum class DomKind { BoolSet, ProdDom, FunDom, SpanDom };
struct SemDomain {
    DomKind kind;
    int n = 0;  // BoolSet: number of bits; the unit set is BoolSet(0)
    SemDomainPtr left, right;
};

SemDomainPtr interpretType(const TypePtr& a);
std::string printDomain(const SemDomainPtr& d);

SemPtr semBit(int b);
SemPtr semUnit();
SemPtr semPair(SemPtr a, SemPtr b);
// Merges equal keys and drops coefficients with |c| <= kRuleTol.
SemPtr semVec(std::vector<std::pair<SemPtr, Scalar>> combo);
// B^n value from a bit string; the empty string is the unit value.
SemPtr semKets(const std::string& bits);
// Inverse of semKets for an n-bit value.
std::string semBits(const SemPtr& v, int n);
// Appends `rest` after the first `count` components of a right-nested tuple.
SemPtr semConcat(const SemPtr& first, size_t count, const SemPtr& rest);

SemPtr etaEmbed(const SemPtr& v);
SemPtr muFlatten(const SemPtr& v);
SemPtr bilinearPair(const SemPtr& a, const SemPtr& b);
SemPtr deepSum(const SemPtr& a, const SemPtr& b, int m);
SemPtr deepScale(Scalar s, const SemPtr& v, int m);
// Constant-map function: |1> selects tVal, |0> selects rVal.
SemPtr ifArrow(const SemPtr& tVal, const SemPtr& rVal);
SemDist applyFun(const SemPtr& f, const SemPtr& arg);

SemPtr semNorm(const SemPtr& v, int n);
SemPtr semProjectorPk(int j, int k, const SemPtr& v, int n);
// (prefix, suffix combination) as a pair; falls back to (|0>^j, |0>^{n-j}).
SemPtr semFactorize(int j, const SemPtr& v, int n);
// Payloads have type B^j * S(B^{n-j}), i.e. semConcat(prefix, j, suffix).
SemDist semMeasure(int j, const SemPtr& v, int n);

// Kleisli evaluation of a derivation. Throws DomainMismatch when an env value
// lies outside the declared context type.
SemDist evalDerivation(const DerivPtr& d, const SemEnv& env = {});

// Closed-term conveniences over the canonical derivation.
SemDist denote(const TermPtr& t);
SemDist denoteAt(const TermPtr& t, const TypePtr& a);
SemDist denoteDist(const Dist<TermPtr>& d, const TypePtr& a);

bool inDomain(const SemPtr& v, const TypePtr& a);

// Extensional equality at type `a`. Functions are tabulated on B^n
// parameters and probed otherwise, with a fixed seed.
bool semEq(const SemPtr& x, const SemPtr& y, const TypePtr& a, double tol = kScalarTol);
bool semEq(const SemDist& x, const SemDist& y, const TypePtr& a, double tol = kScalarTol);

// Probe values for a qubit type: every basis value, and for S-types also
// eight pseudorandom superpositions.
std::vector<SemPtr> probeValues(const TypePtr& a);

std::string printSem(const SemPtr& v);
std::string printSemDist(const SemDist& d);
nlohmann::json semToJson(const SemPtr& v);
nlohmann::json semDistToJson(const SemDist& d);

}  // namespace lams
