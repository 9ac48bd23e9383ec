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


#include <random>

#include "lams/harness.hpp"
#include "lams/printer.hpp"

namespace lams {

namespace {

struct Scoped {
    std::string name;
    TypePtr type;
    bool linear;
    int uses = 0;
};

class Gen {
public:
    Gen(uint64_t seed, const GenOptions& o) : rng_(seed), opts_(o) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    Scalar scalar() {
        static const Scalar pool[] = {2.0, -1.0, 0.5, 0.0, {0.0, 1.0}, {0.6, 0.8}, 1.0 / std::sqrt(2.0), 1.0};
        return coin(0.8) ? pool[pick(0, 7)] : Scalar{std::normal_distribution<double>()(rng_), 0.0};
    }

    TypePtr basis() { return tBn(pick(1, opts_.maxQubits)); }

    // Parameter types: B^n mostly, otherwise a span or a mixed product.
    TypePtr qubit() {
        switch (pick(0, 5)) {
            case 0:
            case 1:
            case 2: return basis();
            case 3:
            case 4: return tSpan(basis());
            default: return tProd(tSpan(tBit()), tBit());
        }
    }

    TypePtr target() {
        switch (pick(0, 9)) {
            case 0:
            case 1: return basis();
            case 2:
            case 3:
            case 4: return tSpan(basis());
            case 5: return tProd(tSpan(tBit()), basis());
            case 6:
                if (opts_.allowMeasurement) {
                    int n = pick(1, opts_.maxQubits);
                    int j = pick(1, n);
                    return tProd(tBn(j), tSpan(tBn(n - j)));
                }
                return tSpan(basis());
            case 7: return tArrow(basis(), coin(0.5) ? tSpan(basis()) : basis());
            case 8: return tSpan(tArrow(tBit(), tBn(pick(1, 2))));
            default:
                if (opts_.maxSpanNesting >= 2) return tSpan(tSpan(basis()));
                return tSpan(basis());
        }
    }

    bool nestingOk(const TypePtr& t) const {
        if (opts_.maxSpanNesting >= 2) return true;
        if (t->kind == TypeKind::Span && t->left->kind == TypeKind::Span) return false;
        if (t->left && !nestingOk(t->left)) return false;
        if (t->right && !nestingOk(t->right)) return false;
        return true;
    }

    // Every judgment in the tree respects the nesting bound, not only the root.
    bool nestingOk(const DerivPtr& d) const {
        if (!nestingOk(d->type)) return false;
        for (const auto& p : d->premises)
            if (!nestingOk(p)) return false;
        return true;
    }

    TermPtr term(const TypePtr& a, int size) {
        if (TermPtr v = linearVar(a, 0.6)) return v;
        if (size <= 2 || coin(0.04)) return leaf(a);
        for (int attempt = 0; attempt < 4; ++attempt)
            if (TermPtr t = compound(a, size)) return t;
        return leaf(a);
    }

    std::vector<Scoped> scope;

private:
    std::mt19937_64 rng_;
    GenOptions opts_;
    int fresh_ = 0;

    // x : T fits a when a = S^k T.
    static bool fits(const TypePtr& var, const TypePtr& a) {
        int k = outerS(a) - outerS(var);
        return k >= 0 && typeEq(stripS(a, k), var);
    }

    TermPtr linearVar(const TypePtr& a, double p) {
        for (auto& s : scope) {
            if (s.linear && s.uses == 0 && fits(s.type, a) && coin(p)) {
                ++s.uses;
                return mkVar(s.name);
            }
        }
        return nullptr;
    }

    TermPtr leaf(const TypePtr& a) {
        if (TermPtr v = linearVar(a, 1.0)) return v;
        std::vector<const Scoped*> dup;
        for (const auto& s : scope)
            if (!s.linear && fits(s.type, a)) dup.push_back(&s);
        if (!dup.empty() && coin(0.5)) return mkVar(dup[pick(0, static_cast<int>(dup.size()) - 1)]->name);
        switch (a->kind) {
            case TypeKind::Bit: return coin(0.5) ? mkKet1() : mkKet0();
            case TypeKind::Unit: return mkUnit();
            case TypeKind::Prod: return mkProd(leaf(a->left), leaf(a->right));
            case TypeKind::Span: {
                if (coin(0.15)) return mkZero(a->left);
                TermPtr inner = leaf(a->left);
                if (a->left->kind != TypeKind::Span && coin(0.4)) return mkScale(scalar(), inner);
                return inner;
            }
            case TypeKind::Arrow: return lambda(a, 1);
        }
        return nullptr;
    }

    TermPtr lambda(const TypePtr& a, int size) {
        const TypePtr& psi = a->left;
        if (psi->kind == TypeKind::Bit && coin(0.3))
            return mkIfTe(term(a->right, (size - 1) / 2), term(a->right, (size - 1) / 2));
        std::string x = "x" + std::to_string(fresh_++);
        const bool linear = !isBasisData(psi);
        scope.push_back({x, psi, linear, 0});
        TermPtr body = term(a->right, size - 1);
        scope.pop_back();
        return mkLam(x, psi, body);
    }

    std::pair<int, int> split(int size) {
        int s1 = pick(1, std::max(1, size - 2));
        return {s1, std::max(1, size - 1 - s1)};
    }

    TermPtr app(const TypePtr& a, int size) {
        TypePtr psi = qubit();
        auto [s1, s2] = split(size);
        TermPtr f = term(tArrow(psi, a), s1);
        TermPtr u = term(psi, s2);
        return mkApp(f, u);
    }

    // Measurement target B^j x S(B^k): returns j, sets n = j + k.
    static int measShape(const TypePtr& a, int* n) {
        auto items = productList(a);
        if (items.size() < 2) return 0;
        int k = 0;
        if (items.back()->kind != TypeKind::Span || !isBasisData(items.back()->left, &k)) return 0;
        for (size_t i = 0; i + 1 < items.size(); ++i)
            if (items[i]->kind != TypeKind::Bit) return 0;
        int j = static_cast<int>(items.size()) - 1;
        *n = j + k;
        return j;
    }

    TermPtr compound(const TypePtr& a, int size) {
        int basisN = 0;
        const bool isBasis = isBasisData(a, &basisN);
        switch (a->kind) {
            case TypeKind::Bit:
                if (coin(0.5)) return mkHead(term(tBn(pick(2, 3)), size - 1));
                return app(a, size);
            case TypeKind::Unit: return leaf(a);
            case TypeKind::Arrow: return lambda(a, size);
            case TypeKind::Prod: {
                int n = 0;
                int j = measShape(a, &n);
                int c = pick(0, 3);
                if (j > 0 && opts_.allowMeasurement && c == 0) return mkMeas(j, term(tSpan(tBn(n)), size - 1));
                if (isBasis && basisN < opts_.maxQubits && c == 1) return mkTail(term(tBn(basisN + 1), size - 1));
                if (c == 2 && coin(0.5)) return app(a, size);
                auto items = productList(a);
                size_t at = static_cast<size_t>(pick(1, static_cast<int>(items.size()) - 1));
                auto [s1, s2] = split(size);
                return mkProd(term(tProdList({items.begin(), items.begin() + at}), s1),
                              term(tProdList({items.begin() + at, items.end()}), s2));
            }
            case TypeKind::Span: {
                const TypePtr& x = a->left;
                switch (pick(0, 6)) {
                    case 0: return mkScale(scalar(), term(a, size - 1));
                    case 1:
                    case 2: {
                        auto [s1, s2] = split(size);
                        return mkSum(term(a, s1), term(a, s2));
                    }
                    case 3: return term(x, size);
                    case 4: {
                        TypePtr psi = coin(0.7) ? basis() : tProd(tSpan(tBit()), tBit());
                        TypePtr su = tSpan(psi);
                        if (!nestingOk(su)) return nullptr;
                        auto [s1, s2] = split(size);
                        return mkApp(term(tSpan(tArrow(psi, x)), s1), term(su, s2));
                    }
                    case 5: {
                        auto items = productList(x);
                        if (items.size() < 2 || x->kind == TypeKind::Span) return nullptr;
                        size_t at = static_cast<size_t>(pick(1, static_cast<int>(items.size()) - 1));
                        TypePtr psi = tProdList({items.begin(), items.begin() + at});
                        TypePtr phi = tProdList({items.begin() + at, items.end()});
                        TypePtr r = tSpan(tProd(tSpan(psi), phi)), l = tSpan(tProd(psi, tSpan(phi)));
                        if (coin(0.5)) return nestingOk(r) ? mkCastR(term(r, size - 1)) : nullptr;
                        return nestingOk(l) ? mkCastL(term(l, size - 1)) : nullptr;
                    }
                    default: return app(a, size);
                }
            }
        }
        return nullptr;
    }
};

}  // namespace

TypePtr genTargetType(uint64_t seed, const GenOptions& opts) {
    Gen g(seed, opts);
    return g.target();
}

Generated genTypedTerm(uint64_t seed, int size, const GenOptions& opts) {
    std::mt19937_64 seeds(seed);
    for (int attempt = 0; attempt < 500; ++attempt) {
        Gen g(seeds(), opts);
        TypePtr a = g.target();
        TermPtr t = g.term(a, g.pick(std::max(1, size / 3), size));
        if (!t || termSize(t) > size || !isClosed(t)) continue;
        try {
            DerivPtr d = checkType({}, t, a);
            if (!g.nestingOk(d)) continue;
        } catch (const LamsError&) {
            continue;
        }
        return {t, a};
    }
    // Unreachable in practice; the fallback keeps the contract total.
    return {mkKet0(), tBit()};
}

}  // namespace lams
