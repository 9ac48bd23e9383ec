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


#include "lams/term.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

namespace lams {

namespace {

TermPtr node(Tag tag, std::vector<TermPtr> kids = {}) {
    auto t = std::make_shared<Term>();
    t->tag = tag;
    t->kids = std::move(kids);
    return t;
}

}  // namespace

TermPtr mkVar(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->tag = Tag::Var;
    t->name = name;
    return t;
}

TermPtr mkKet0() {
    static const TermPtr k = node(Tag::Ket0);
    return k;
}

TermPtr mkKet1() {
    static const TermPtr k = node(Tag::Ket1);
    return k;
}

TermPtr mkUnit() {
    static const TermPtr u = node(Tag::Unit);
    return u;
}

TermPtr mkLam(const std::string& name, TypePtr annot, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->tag = Tag::Lam;
    t->name = name;
    t->annot = std::move(annot);
    t->kids = {std::move(body)};
    return t;
}

TermPtr mkIfTe(TermPtr thenBranch, TermPtr elseBranch) {
    return node(Tag::IfTe, {std::move(thenBranch), std::move(elseBranch)});
}

TermPtr mkApp(TermPtr f, TermPtr arg) { return node(Tag::App, {std::move(f), std::move(arg)}); }

TermPtr mkProd(TermPtr a, TermPtr b) {
    if (a->tag == Tag::Prod) return mkProd(a->kids[0], mkProd(a->kids[1], std::move(b)));
    return node(Tag::Prod, {std::move(a), std::move(b)});
}

TermPtr mkHead(TermPtr t) { return node(Tag::Head, {std::move(t)}); }
TermPtr mkTail(TermPtr t) { return node(Tag::Tail, {std::move(t)}); }
TermPtr mkCastR(TermPtr t) { return node(Tag::CastR, {std::move(t)}); }
TermPtr mkCastL(TermPtr t) { return node(Tag::CastL, {std::move(t)}); }

TermPtr mkMeas(int j, TermPtr t) {
    auto n = std::make_shared<Term>();
    n->tag = Tag::Meas;
    n->j = j;
    n->kids = {std::move(t)};
    return n;
}

TermPtr mkZero(TypePtr annot) {
    auto n = std::make_shared<Term>();
    n->tag = Tag::Zero;
    n->annot = std::move(annot);
    return n;
}

TermPtr mkScale(Scalar s, TermPtr t) {
    assert(isFiniteScalar(s));
    auto n = std::make_shared<Term>();
    n->tag = Tag::Scale;
    n->scalar = s;
    n->kids = {std::move(t)};
    return n;
}

TermPtr mkSum(std::vector<TermPtr> summands) {
    assert(!summands.empty());
    std::vector<TermPtr> flat;
    flat.reserve(summands.size());
    for (auto& s : summands) {
        if (s->tag == Tag::Sum)
            flat.insert(flat.end(), s->kids.begin(), s->kids.end());
        else
            flat.push_back(std::move(s));
    }
    if (flat.size() == 1) return flat.front();
    std::stable_sort(flat.begin(), flat.end(), TermLess{});
    return node(Tag::Sum, std::move(flat));
}

TermPtr mkSum(TermPtr a, TermPtr b) { return mkSum(std::vector<TermPtr>{std::move(a), std::move(b)}); }

TermPtr mkProdList(const std::vector<TermPtr>& items) {
    assert(!items.empty());
    TermPtr t = items.back();
    for (size_t i = items.size() - 1; i-- > 0;) t = mkProd(items[i], t);
    return t;
}

TermPtr mkKets(const std::string& bits) {
    if (bits.empty()) return mkUnit();
    std::vector<TermPtr> items;
    for (char c : bits) items.push_back(c == '1' ? mkKet1() : mkKet0());
    return mkProdList(items);
}

TermPtr mkKetPlus() {
    const double h = 1.0 / std::sqrt(2.0);
    return mkSum(mkScale(h, mkKet0()), mkScale(h, mkKet1()));
}

TermPtr mkKetMinus() {
    const double h = 1.0 / std::sqrt(2.0);
    return mkSum(mkScale(h, mkKet0()), mkScale(-h, mkKet1()));
}

TermPtr mkRaw(Tag tag, std::vector<TermPtr> kids, Scalar s, std::string name, TypePtr annot, int j) {
    auto n = std::make_shared<Term>();
    n->tag = tag;
    n->kids = std::move(kids);
    n->scalar = s;
    n->name = std::move(name);
    n->annot = std::move(annot);
    n->j = j;
    return n;
}

TermPtr rebuild(const TermPtr& t, std::vector<TermPtr> kids) {
    switch (t->tag) {
        case Tag::Var:
        case Tag::Ket0:
        case Tag::Ket1:
        case Tag::Unit:
        case Tag::Zero:
            return t;
        case Tag::Lam: return mkLam(t->name, t->annot, kids[0]);
        case Tag::IfTe: return mkIfTe(kids[0], kids[1]);
        case Tag::App: return mkApp(kids[0], kids[1]);
        case Tag::Prod: return mkProd(kids[0], kids[1]);
        case Tag::Head: return mkHead(kids[0]);
        case Tag::Tail: return mkTail(kids[0]);
        case Tag::Meas: return mkMeas(t->j, kids[0]);
        case Tag::CastR: return mkCastR(kids[0]);
        case Tag::CastL: return mkCastL(kids[0]);
        case Tag::Scale: return mkScale(t->scalar, kids[0]);
        case Tag::Sum: return mkSum(std::move(kids));
    }
    return t;
}

int compareTerm(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->tag != b->tag) return static_cast<int>(a->tag) < static_cast<int>(b->tag) ? -1 : 1;
    switch (a->tag) {
        case Tag::Var:
            return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
        case Tag::Zero:
            return compareType(a->annot, b->annot);
        case Tag::Lam:
            if (int c = compareType(a->annot, b->annot)) return c;
            if (int c = compareTerm(a->kids[0], b->kids[0])) return c;
            return a->name < b->name ? -1 : (a->name == b->name ? 0 : 1);
        case Tag::Scale:
            if (int c = compareScalarExact(a->scalar, b->scalar)) return c;
            return compareTerm(a->kids[0], b->kids[0]);
        case Tag::Meas:
            if (a->j != b->j) return a->j < b->j ? -1 : 1;
            return compareTerm(a->kids[0], b->kids[0]);
        default:
            break;
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    for (size_t i = 0; i < a->kids.size(); ++i)
        if (int c = compareTerm(a->kids[i], b->kids[i])) return c;
    return 0;
}

TermPtr canonicalizeSum(const TermPtr& t) {
    if (t->kids.empty()) return t;
    std::vector<TermPtr> kids;
    kids.reserve(t->kids.size());
    for (const auto& k : t->kids) kids.push_back(canonicalizeSum(k));
    return rebuild(t, std::move(kids));
}

namespace {

TermPtr alphaRec(const TermPtr& t, std::map<std::string, std::string>& env, int depth) {
    switch (t->tag) {
        case Tag::Var: {
            auto it = env.find(t->name);
            return it == env.end() ? t : mkVar(it->second);
        }
        case Tag::Lam: {
            std::string fresh = "#" + std::to_string(depth);
            auto saved = env.find(t->name) == env.end() ? std::nullopt
                                                         : std::optional<std::string>(env[t->name]);
            env[t->name] = fresh;
            TermPtr body = alphaRec(t->kids[0], env, depth + 1);
            if (saved)
                env[t->name] = *saved;
            else
                env.erase(t->name);
            return mkLam(fresh, t->annot, body);
        }
        default: {
            if (t->kids.empty()) return t;
            std::vector<TermPtr> kids;
            for (const auto& k : t->kids) kids.push_back(alphaRec(k, env, depth));
            return rebuild(t, std::move(kids));
        }
    }
}

bool tolEq(const TermPtr& a, const TermPtr& b, double tol);

// Multiset matching with backtracking; sums are small in practice.
bool matchSummands(const std::vector<TermPtr>& xs, const std::vector<TermPtr>& ys, double tol,
                   size_t i, std::vector<bool>& used) {
    if (i == xs.size()) return true;
    for (size_t k = 0; k < ys.size(); ++k) {
        if (used[k] || !tolEq(xs[i], ys[k], tol)) continue;
        used[k] = true;
        if (matchSummands(xs, ys, tol, i + 1, used)) return true;
        used[k] = false;
    }
    return false;
}

bool tolEq(const TermPtr& a, const TermPtr& b, double tol) {
    if (a.get() == b.get()) return true;
    if (a->tag != b->tag) return false;
    switch (a->tag) {
        case Tag::Var: return a->name == b->name;
        case Tag::Zero: return typeEq(a->annot, b->annot);
        case Tag::Lam:
            return a->name == b->name && typeEq(a->annot, b->annot) && tolEq(a->kids[0], b->kids[0], tol);
        case Tag::Scale:
            return scalarEq(a->scalar, b->scalar, tol) && tolEq(a->kids[0], b->kids[0], tol);
        case Tag::Meas:
            return a->j == b->j && tolEq(a->kids[0], b->kids[0], tol);
        case Tag::Sum: {
            if (a->kids.size() != b->kids.size()) return false;
            std::vector<bool> used(b->kids.size(), false);
            return matchSummands(a->kids, b->kids, tol, 0, used);
        }
        default:
            break;
    }
    if (a->kids.size() != b->kids.size()) return false;
    for (size_t i = 0; i < a->kids.size(); ++i)
        if (!tolEq(a->kids[i], b->kids[i], tol)) return false;
    return true;
}

void freeVarsRec(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    if (t->tag == Tag::Var) {
        if (!bound.count(t->name)) out.insert(t->name);
        return;
    }
    if (t->tag == Tag::Lam) {
        bool fresh = bound.insert(t->name).second;
        freeVarsRec(t->kids[0], bound, out);
        if (fresh) bound.erase(t->name);
        return;
    }
    for (const auto& k : t->kids) freeVarsRec(k, bound, out);
}

}  // namespace

TermPtr alphaNormalize(const TermPtr& t) {
    std::map<std::string, std::string> env;
    return alphaRec(t, env, 0);
}

bool termEq(const TermPtr& a, const TermPtr& b, double tol) {
    return tolEq(alphaNormalize(a), alphaNormalize(b), tol);
}

namespace {

TermPtr substituteRec(const TermPtr& t, const std::string& x, const TermPtr& r, const std::set<std::string>& rFree) {
    switch (t->tag) {
        case Tag::Var:
            return t->name == x ? r : t;
        case Tag::Lam: {
            if (t->name == x) return t;
            if (!rFree.count(t->name)) return mkLam(t->name, t->annot, substituteRec(t->kids[0], x, r, rFree));
            // The binder would capture a free variable of r: rename it first.
            std::set<std::string> avoid = freeVars(t->kids[0]);
            avoid.insert(rFree.begin(), rFree.end());
            std::string fresh = t->name;
            while (avoid.count(fresh) || fresh == x) fresh += "'";
            TermPtr body = substituteRec(t->kids[0], t->name, mkVar(fresh), {fresh});
            return mkLam(fresh, t->annot, substituteRec(body, x, r, rFree));
        }
        default: {
            if (t->kids.empty()) return t;
            std::vector<TermPtr> kids;
            kids.reserve(t->kids.size());
            for (const auto& k : t->kids) kids.push_back(substituteRec(k, x, r, rFree));
            return rebuild(t, std::move(kids));
        }
    }
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& r) {
    return substituteRec(t, x, r, freeVars(r));
}

std::set<std::string> freeVars(const TermPtr& t) {
    std::set<std::string> bound, out;
    freeVarsRec(t, bound, out);
    return out;
}

bool isClosed(const TermPtr& t) { return freeVars(t).empty(); }

bool isBasisTerm(const TermPtr& t) {
    switch (t->tag) {
        case Tag::Var:
        case Tag::Lam:
        case Tag::Ket0:
        case Tag::Ket1:
        case Tag::Unit:
        case Tag::IfTe:
            return true;
        case Tag::Prod:
            return isBasisTerm(t->kids[0]) && isBasisTerm(t->kids[1]);
        default:
            return false;
    }
}

bool isValue(const TermPtr& t) {
    switch (t->tag) {
        case Tag::Zero:
            return true;
        case Tag::Sum:
            return std::all_of(t->kids.begin(), t->kids.end(), [](const TermPtr& k) { return isValue(k); });
        case Tag::Scale:
            return isValue(t->kids[0]);
        case Tag::Prod:
            return isValue(t->kids[0]) && isValue(t->kids[1]);
        default:
            return isBasisTerm(t);
    }
}

std::vector<TermPtr> termList(const TermPtr& t) {
    std::vector<TermPtr> out;
    TermPtr cur = t;
    while (cur->tag == Tag::Prod) {
        out.push_back(cur->kids[0]);
        cur = cur->kids[1];
    }
    out.push_back(cur);
    return out;
}

int termSize(const TermPtr& t) {
    int n = 1;
    for (const auto& k : t->kids) n += termSize(k);
    return n;
}

}  // namespace lams
