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

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lams/scalar.hpp"
#include "lams/type.hpp"

namespace lams {

// The declaration order is the canonical constructor order. App must precede
// Scale so that a partially distributed sum lists pending applications first.
enum class Tag {
    Var, Ket0, Ket1, Unit, Lam, IfTe, App, Prod,
    Head, Tail, Meas, CastR, CastL, Zero, Scale, Sum
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable node. Field use by tag:
//   Var: name   Lam: name, annot, kids[0]   IfTe: kids = {then, else}
//   App: kids = {f, arg}   Prod: kids = {left, right}
//   Head/Tail/CastR/CastL: kids[0]   Meas: j, kids[0]
//   Zero: annot (the term has type S annot)   Scale: scalar, kids[0]
//   Sum: kids, at least two, sorted, never directly containing a Sum
struct Term {
    Tag tag;
    std::string name;
    TypePtr annot;
    Scalar scalar{};
    int j = 0;
    std::vector<TermPtr> kids;
};

// Smart constructors keep every node canonical: sums are flattened and
// sorted (duplicates kept), products are right-nested.
TermPtr mkVar(const std::string& name);
TermPtr mkKet0();
TermPtr mkKet1();
TermPtr mkUnit();
TermPtr mkLam(const std::string& name, TypePtr annot, TermPtr body);
TermPtr mkIfTe(TermPtr thenBranch, TermPtr elseBranch);
TermPtr mkApp(TermPtr f, TermPtr arg);
TermPtr mkProd(TermPtr a, TermPtr b);
TermPtr mkHead(TermPtr t);
TermPtr mkTail(TermPtr t);
TermPtr mkMeas(int j, TermPtr t);
TermPtr mkCastR(TermPtr t);
TermPtr mkCastL(TermPtr t);
TermPtr mkZero(TypePtr annot);
TermPtr mkScale(Scalar s, TermPtr t);
TermPtr mkSum(std::vector<TermPtr> summands);
TermPtr mkSum(TermPtr a, TermPtr b);
TermPtr mkProdList(const std::vector<TermPtr>& items);

// |b1...bn> as a right-nested product of kets; an empty string gives Unit.
TermPtr mkKets(const std::string& bits);
TermPtr mkKetPlus();
TermPtr mkKetMinus();

// Builds a node verbatim, bypassing canonicalization. Test-only plumbing for
// exercising canonicalizeSum on non-canonical input.
TermPtr mkRaw(Tag tag, std::vector<TermPtr> kids, Scalar s = {}, std::string name = {},
              TypePtr annot = nullptr, int j = 0);

// Rebuild of node `t` with new children, canonicalizing at this node only.
TermPtr rebuild(const TermPtr& t, std::vector<TermPtr> kids);

// Exact structural order (names, exact scalars). Total on terms.
int compareTerm(const TermPtr& a, const TermPtr& b);
inline bool termIdentical(const TermPtr& a, const TermPtr& b) { return compareTerm(a, b) == 0; }
struct TermLess {
    bool operator()(const TermPtr& a, const TermPtr& b) const { return compareTerm(a, b) < 0; }
};

// Flattens and sorts every Sum, right-nests every Prod. Idempotent.
TermPtr canonicalizeSum(const TermPtr& t);

// Alpha-equivalence modulo AC with scalar tolerance `tol`.
bool termEq(const TermPtr& a, const TermPtr& b, double tol = kScalarTol);

// Renames bound variables to their binder depth; used by termEq.
TermPtr alphaNormalize(const TermPtr& t);

// Capture-avoiding; binders are renamed only when `r` has a clashing free
// variable. The result is canonical.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& r);

std::set<std::string> freeVars(const TermPtr& t);
bool isClosed(const TermPtr& t);

bool isBasisTerm(const TermPtr& t);
bool isValue(const TermPtr& t);

// Product-list elements of a right-nested Prod.
std::vector<TermPtr> termList(const TermPtr& t);

int termSize(const TermPtr& t);

}  // namespace lams
