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


#include "lams/harness.hpp"

namespace lams {

TermPtr ElimContext::plug(const TermPtr& t) const { return substitute(body, kHole, t); }

std::vector<TermPtr> plugPool() {
    std::vector<TermPtr> pool = {mkKet0(), mkKet1(), mkKetPlus(), mkLam("x", tBit(), mkVar("x")),
                                 mkLam("x", tBit(), mkApp(mkIfTe(mkKet0(), mkKet1()), mkVar("x")))};
    // Two seeded closed values widen the pool beyond qubits and Boolean maps.
    for (uint64_t seed : {7ULL, 11ULL}) {
        Generated g = genTypedTerm(seed, 8);
        try {
            Dist<TermPtr> nf = normalize(g.term, 100000, nullptr, g.type);
            if (!nf.entries().empty()) pool.push_back(nf.entries().front().second);
        } catch (const LamsError&) {
        }
    }
    return pool;
}

namespace {

std::optional<TypePtr> holeTyped(const TermPtr& body, const TypePtr& a) {
    try {
        return inferType(Context{{kHole, a}}, body).type;
    } catch (const LamsError&) {
        return std::nullopt;
    }
}

bool observable(const TypePtr& t) {
    int n = 0;
    if (isBasisData(t, &n)) return n >= 1;
    std::vector<TypePtr> items = productList(t);
    if (items.size() < 2 || !typeEq(items.back(), tSpan(tUnit()))) return false;
    items.pop_back();
    return isBasisData(tProdList(items), &n) && n >= 1;
}

// Drops the phase suffix of a measured outcome.
TermPtr basisPart(const TermPtr& v) {
    std::vector<TermPtr> items;
    TermPtr cur = v;
    while (cur->tag == Tag::Prod) {
        items.push_back(cur->kids[0]);
        cur = cur->kids[1];
    }
    if (cur->tag == Tag::Ket0 || cur->tag == Tag::Ket1) items.push_back(cur);
    return mkProdList(items);
}

}  // namespace

std::vector<ElimContext> elimContexts(const TypePtr& a, int depth) {
    const std::vector<TermPtr> pool = plugPool();
    std::vector<TermPtr> level{mkVar(kHole)};
    std::vector<ElimContext> out;
    if (observable(a)) out.push_back({level.front(), a});
    for (int d = 0; d < depth; ++d) {
        std::vector<TermPtr> next;
        for (const auto& c : level) {
            std::vector<TermPtr> wraps;
            for (const auto& p : pool) {
                wraps.push_back(mkApp(c, p));
                wraps.push_back(mkApp(p, c));
            }
            for (int j = 1; j <= 3; ++j) wraps.push_back(mkMeas(j, c));
            wraps.push_back(mkHead(c));
            wraps.push_back(mkTail(c));
            wraps.push_back(mkCastR(c));
            wraps.push_back(mkCastL(c));
            for (auto& w : wraps) {
                std::optional<TypePtr> ty = holeTyped(w, a);
                if (!ty) continue;
                next.push_back(w);
                if (observable(*ty)) out.push_back({w, *ty});
            }
        }
        level = std::move(next);
    }
    return out;
}

bool opEquivCheck(const TermPtr& t, const TermPtr& r, int depth, long fuel) {
    const TypePtr a = typeOf(t);
    for (const auto& c : elimContexts(a, depth)) {
        Dist<TermPtr> x = normalize(c.plug(t), fuel, nullptr, c.type).map<TermPtr>(basisPart);
        Dist<TermPtr> y = normalize(c.plug(r), fuel, nullptr, c.type).map<TermPtr>(basisPart);
        if (!distEq<TermPtr>(x, y, kProbTol, [](const TermPtr& u, const TermPtr& v) { return termEq(u, v); }))
            return false;
    }
    return true;
}

}  // namespace lams
