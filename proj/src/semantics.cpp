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


#include "lams/semantics.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "lams/printer.hpp"

namespace lams {

struct Closure {
    // Lam: evaluate `body` with `param` bound. Table: constant maps of If.
    bool table = false;
    DerivPtr body;
    std::string param;
    SemEnv env;
    SemPtr onOne, onZero;
};

namespace {

SemPtr make(SemValue v) { return std::make_shared<const SemValue>(std::move(v)); }

SemDist pointD(SemPtr v) { return SemDist::point(std::move(v)); }

template <class F>
SemDist bindD(const SemDist& d, F f) {
    std::vector<SemDist::Entry> raw;
    for (const auto& [p, v] : d.entries()) {
        const SemDist out = f(v);  // a range-for over f(v).entries() would dangle
        for (const auto& [q, w] : out.entries()) raw.emplace_back(p * q, w);
    }
    return SemDist::fromUnchecked(std::move(raw));
}

template <class F>
SemDist mapD(const SemDist& d, F f) {
    return bindD(d, [&](const SemPtr& v) { return pointD(f(v)); });
}

const SemValue& asVec(const SemPtr& v, const char* where) {
    if (v->kind != SemKind::Vec) throw DepthMismatch(std::string(where) + ": expected a combination, got " + printSem(v));
    return *v;
}

// Coefficientwise comparison after grouping keys by `keyEq`.
template <class KeyEq>
bool vecEq(const SemValue& a, const SemValue& b, double tol, KeyEq keyEq) {
    auto massIn = [&](const SemValue& v, const SemPtr& k) {
        Scalar s = 0;
        for (const auto& [k2, c] : v.vec)
            if (keyEq(k, k2)) s += c;
        return s;
    };
    for (const auto* side : {&a, &b})
        for (const auto& [k, c] : side->vec)
            if (std::abs(massIn(a, k) - massIn(b, k)) > tol) return false;
    return true;
}

}  // namespace

int compareSem(const SemPtr& a, const SemPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case SemKind::Basis: return a->bit == b->bit ? 0 : (a->bit < b->bit ? -1 : 1);
        case SemKind::Unit: return 0;
        case SemKind::Pair: {
            int c = compareSem(a->left, b->left);
            return c ? c : compareSem(a->right, b->right);
        }
        case SemKind::Fun: return a->fingerprint.compare(b->fingerprint);
        case SemKind::Vec: {
            if (a->vec.size() != b->vec.size()) return a->vec.size() < b->vec.size() ? -1 : 1;
            for (size_t i = 0; i < a->vec.size(); ++i) {
                if (int c = compareSem(a->vec[i].first, b->vec[i].first)) return c;
                if (int c = compareScalarExact(a->vec[i].second, b->vec[i].second)) return c;
            }
            return 0;
        }
    }
    return 0;
}

bool semValueEq(const SemPtr& a, const SemPtr& b, double tol) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case SemKind::Basis: return a->bit == b->bit;
        case SemKind::Unit: return true;
        case SemKind::Pair: return semValueEq(a->left, b->left, tol) && semValueEq(a->right, b->right, tol);
        case SemKind::Fun: return a->fingerprint == b->fingerprint;
        case SemKind::Vec:
            return vecEq(*a, *b, tol, [&](const SemPtr& x, const SemPtr& y) { return semValueEq(x, y, tol); });
    }
    return false;
}

SemDomainPtr interpretType(const TypePtr& a) {
    auto dom = [](SemDomain d) { return std::make_shared<const SemDomain>(std::move(d)); };
    switch (a->kind) {
        case TypeKind::Bit: return dom({DomKind::BoolSet, 1, nullptr, nullptr});
        case TypeKind::Unit: return dom({DomKind::BoolSet, 0, nullptr, nullptr});
        case TypeKind::Prod: return dom({DomKind::ProdDom, 0, interpretType(a->left), interpretType(a->right)});
        case TypeKind::Arrow: return dom({DomKind::FunDom, 0, interpretType(a->left), interpretType(a->right)});
        case TypeKind::Span: return dom({DomKind::SpanDom, 0, interpretType(a->left), nullptr});
    }
    return nullptr;
}

std::string printDomain(const SemDomainPtr& d) {
    switch (d->kind) {
        case DomKind::BoolSet: return "BoolSet(" + std::to_string(d->n) + ")";
        case DomKind::ProdDom: return "ProdDom(" + printDomain(d->left) + ", " + printDomain(d->right) + ")";
        case DomKind::FunDom: return "FunDom(" + printDomain(d->left) + ", " + printDomain(d->right) + ")";
        case DomKind::SpanDom: return "SpanDom(" + printDomain(d->left) + ")";
    }
    return "";
}

SemPtr semBit(int b) {
    static const SemPtr zero = make({SemKind::Basis, 0, nullptr, nullptr, nullptr, "", {}});
    static const SemPtr one = make({SemKind::Basis, 1, nullptr, nullptr, nullptr, "", {}});
    return b ? one : zero;
}

SemPtr semUnit() {
    static const SemPtr u = make({SemKind::Unit, 0, nullptr, nullptr, nullptr, "", {}});
    return u;
}

SemPtr semPair(SemPtr a, SemPtr b) { return make({SemKind::Pair, 0, std::move(a), std::move(b), nullptr, "", {}}); }

SemPtr semVec(std::vector<std::pair<SemPtr, Scalar>> combo) {
    std::stable_sort(combo.begin(), combo.end(),
                     [](const auto& x, const auto& y) { return compareSem(x.first, y.first) < 0; });
    std::vector<std::pair<SemPtr, Scalar>> out;
    for (auto& [k, c] : combo) {
        if (!out.empty() && compareSem(out.back().first, k) == 0)
            out.back().second += c;
        else
            out.emplace_back(std::move(k), c);
    }
    std::erase_if(out, [](const auto& e) { return std::abs(e.second) <= kRuleTol; });
    return make({SemKind::Vec, 0, nullptr, nullptr, nullptr, "", std::move(out)});
}

SemPtr semKets(const std::string& bits) {
    if (bits.empty()) return semUnit();
    SemPtr v = semBit(bits.back() == '1');
    for (size_t i = bits.size() - 1; i-- > 0;) v = semPair(semBit(bits[i] == '1'), v);
    return v;
}

std::string semBits(const SemPtr& v, int n) {
    if (n == 0) {
        if (v->kind != SemKind::Unit) throw DomainMismatch("expected the unit value, got " + printSem(v));
        return "";
    }
    std::string out;
    SemPtr cur = v;
    for (int i = 1; i < n; ++i) {
        if (cur->kind != SemKind::Pair || cur->left->kind != SemKind::Basis)
            throw DomainMismatch("expected a " + std::to_string(n) + "-bit value, got " + printSem(v));
        out.push_back(cur->left->bit ? '1' : '0');
        cur = cur->right;
    }
    if (cur->kind != SemKind::Basis) throw DomainMismatch("expected a bit, got " + printSem(cur));
    out.push_back(cur->bit ? '1' : '0');
    return out;
}

SemPtr semConcat(const SemPtr& first, size_t count, const SemPtr& rest) {
    if (count <= 1) return semPair(first, rest);
    if (first->kind != SemKind::Pair) throw DomainMismatch("tuple shorter than its type: " + printSem(first));
    return semPair(first->left, semConcat(first->right, count - 1, rest));
}

SemPtr etaEmbed(const SemPtr& v) { return semVec({{v, 1.0}}); }

SemPtr muFlatten(const SemPtr& v) {
    const SemValue& outer = asVec(v, "mu");
    std::vector<std::pair<SemPtr, Scalar>> raw;
    for (const auto& [k, c] : outer.vec) {
        if (k->kind != SemKind::Vec) throw KeyNotVec("mu over a non-combination key " + printSem(k));
        for (const auto& [k2, c2] : k->vec) raw.emplace_back(k2, c * c2);
    }
    return semVec(std::move(raw));
}

SemPtr bilinearPair(const SemPtr& a, const SemPtr& b) {
    const SemValue& x = asVec(a, "bilinearPair");
    const SemValue& y = asVec(b, "bilinearPair");
    std::vector<std::pair<SemPtr, Scalar>> raw;
    for (const auto& [k1, c1] : x.vec)
        for (const auto& [k2, c2] : y.vec) raw.emplace_back(semPair(k1, k2), c1 * c2);
    return semVec(std::move(raw));
}

SemPtr deepSum(const SemPtr& a, const SemPtr& b, int m) {
    if (m < 1) throw DepthMismatch("deepSum at depth " + std::to_string(m));
    const SemValue& x = asVec(a, "deepSum");
    const SemValue& y = asVec(b, "deepSum");
    std::vector<std::pair<SemPtr, Scalar>> raw;
    if (m == 1) {
        raw = x.vec;
        raw.insert(raw.end(), y.vec.begin(), y.vec.end());
    } else {
        for (const auto& [k1, c1] : x.vec)
            for (const auto& [k2, c2] : y.vec) raw.emplace_back(deepSum(k1, k2, m - 1), c1 * c2);
    }
    return semVec(std::move(raw));
}

SemPtr deepScale(Scalar s, const SemPtr& v, int m) {
    if (m < 1) throw DepthMismatch("deepScale at depth " + std::to_string(m));
    const SemValue& x = asVec(v, "deepScale");
    std::vector<std::pair<SemPtr, Scalar>> raw;
    for (const auto& [k, c] : x.vec) {
        if (m == 1)
            raw.emplace_back(k, s * c);
        else
            raw.emplace_back(deepScale(s, k, m - 1), c);
    }
    return semVec(std::move(raw));
}

SemPtr ifArrow(const SemPtr& tVal, const SemPtr& rVal) {
    auto c = std::make_shared<Closure>();
    c->table = true;
    c->onOne = tVal;
    c->onZero = rVal;
    std::string fp = "if[" + printSem(tVal) + "|" + printSem(rVal) + "]";
    return make({SemKind::Fun, 0, nullptr, nullptr, std::move(c), std::move(fp), {}});
}

namespace {

SemDist evalRec(const DerivPtr& d, const SemEnv& env);

SemPtr makeClosure(const DerivPtr& lam, const DerivPtr& body, const SemEnv& env) {
    auto c = std::make_shared<Closure>();
    c->body = body;
    c->param = lam->term->name;
    c->env = env;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%p", static_cast<const void*>(body.get()));
    std::string fp = std::string("fn@") + buf + "{";
    for (const auto& [x, v] : env) fp += x + "=" + printSem(v) + ";";
    fp += "}";
    return make({SemKind::Fun, 0, nullptr, nullptr, std::move(c), std::move(fp), {}});
}

}  // namespace

SemDist applyFun(const SemPtr& f, const SemPtr& arg) {
    if (f->kind != SemKind::Fun) throw DomainMismatch("applying a non-function " + printSem(f));
    const Closure& c = *f->fun;
    if (c.table) {
        if (arg->kind != SemKind::Basis) throw DomainMismatch("conditional on a non-bit " + printSem(arg));
        return pointD(arg->bit ? c.onOne : c.onZero);
    }
    SemEnv env = c.env;
    env[c.param] = arg;
    return evalRec(c.body, env);
}

SemPtr semNorm(const SemPtr& v, int n) {
    const SemValue& x = asVec(v, "Norm");
    double total = 0;
    for (const auto& [k, c] : x.vec) total += std::norm(c);
    if (total <= kRuleTol * kRuleTol) return etaEmbed(semKets(std::string(n, '0')));
    std::vector<std::pair<SemPtr, Scalar>> raw;
    for (const auto& [k, c] : x.vec) raw.emplace_back(k, c / std::sqrt(total));
    return semVec(std::move(raw));
}

namespace {

std::string prefixOf(int j, int k) {
    std::string s(j, '0');
    for (int i = 0; i < j; ++i) s[j - 1 - i] = ((k >> i) & 1) ? '1' : '0';
    return s;
}

}  // namespace

SemPtr semProjectorPk(int j, int k, const SemPtr& v, int n) {
    const SemValue& x = asVec(v, "P_k");
    const std::string want = prefixOf(j, k);
    std::vector<std::pair<SemPtr, Scalar>> raw;
    for (const auto& [key, c] : x.vec)
        if (semBits(key, n).compare(0, j, want) == 0) raw.emplace_back(key, c);
    return semVec(std::move(raw));
}

SemPtr semFactorize(int j, const SemPtr& v, int n) {
    const SemValue& x = asVec(v, "phi_j");
    std::string prefix;
    bool shared = !x.vec.empty();
    std::vector<std::pair<SemPtr, Scalar>> suffix;
    for (const auto& [key, c] : x.vec) {
        std::string bits = semBits(key, n);
        if (prefix.empty()) prefix = bits.substr(0, j);
        if (bits.compare(0, j, prefix) != 0) shared = false;
        suffix.emplace_back(semKets(bits.substr(j)), c);
    }
    if (!shared) return semPair(semKets(std::string(j, '0')), etaEmbed(semKets(std::string(n - j, '0'))));
    return semPair(semKets(prefix), semVec(std::move(suffix)));
}

SemDist semMeasure(int j, const SemPtr& v, int n) {
    if (j < 1 || j > n) throw ArityError("measuring " + std::to_string(j) + " of " + std::to_string(n) + " qubits");
    SemPtr psi = semNorm(v, n);
    std::vector<SemDist::Entry> raw;
    for (int k = 0; k < (1 << j); ++k) {
        SemPtr proj = semProjectorPk(j, k, psi, n);
        double p = 0;
        for (const auto& [key, c] : proj->vec) p += std::norm(c);
        if (p < kRuleTol) continue;
        SemPtr f = semFactorize(j, semNorm(proj, n), n);
        raw.emplace_back(p, semConcat(f->left, static_cast<size_t>(j), f->right));
    }
    return SemDist::renormalize(std::move(raw));
}

namespace {

int bitWidth(const TypePtr& a) {
    int n = 0;
    if (!isBasisData(a, &n)) throw DomainMismatch("not a B^n type: " + printType(a));
    return n;
}

// US applied to a distribution-valued map: each key is resolved
// independently and the outcomes are recombined with the key coefficients.
SemDist kleisliOverVec(const SemValue& v, const std::function<SemDist(const SemPtr&)>& f) {
    using Partial = std::pair<double, std::vector<std::pair<SemPtr, Scalar>>>;
    std::vector<Partial> acc{{1.0, {}}};
    for (const auto& [k, c] : v.vec) {
        SemDist out = f(k);
        std::vector<Partial> next;
        for (const auto& [p, combo] : acc) {
            for (const auto& [q, w] : out.entries()) {
                auto grown = combo;
                grown.emplace_back(w, c);
                next.emplace_back(p * q, std::move(grown));
            }
        }
        acc = std::move(next);
    }
    std::vector<SemDist::Entry> raw;
    for (auto& [p, combo] : acc) raw.emplace_back(p, semVec(std::move(combo)));
    return SemDist::fromUnchecked(std::move(raw));
}

SemDist evalRec(const DerivPtr& d, const SemEnv& env) {
    const auto& pr = d->premises;
    switch (d->rule) {
        case Rule::Ax: {
            auto it = env.find(d->term->name);
            if (it == env.end()) throw DomainMismatch("no value for " + d->term->name);
            return pointD(it->second);
        }
        case Rule::Ax0: return pointD(semVec({}));
        case Rule::AxKet0: return pointD(semBit(0));
        case Rule::AxKet1: return pointD(semBit(1));
        case Rule::AxUnit: return pointD(semUnit());
        case Rule::AlphaI: {
            const int m = outerS(d->type);
            const Scalar s = d->term->scalar;
            return mapD(evalRec(pr[0], env), [&](const SemPtr& v) { return deepScale(s, v, m); });
        }
        case Rule::SumI: {
            // n-ary sums fold left; deepSum is associative on the nose.
            const int m = outerS(d->type);
            SemDist acc = evalRec(pr[0], env);
            for (size_t i = 1; i < pr.size(); ++i) {
                SemDist next = evalRec(pr[i], env);
                acc = bindD(acc, [&](const SemPtr& a) {
                    return mapD(next, [&](const SemPtr& b) { return deepSum(a, b, m); });
                });
            }
            return acc;
        }
        case Rule::SI: return mapD(evalRec(pr[0], env), etaEmbed);
        case Rule::SE: {
            const int k = outerS(pr[0]->type);
            const int n = bitWidth(stripS(pr[0]->type));
            const int j = d->term->j;
            return bindD(evalRec(pr[0], env), [&](const SemPtr& v) {
                SemPtr flat = v;
                for (int i = 1; i < k; ++i) flat = muFlatten(flat);
                return semMeasure(j, flat, n);
            });
        }
        case Rule::If: {
            SemDist tv = evalRec(pr[0], env);
            SemDist rv = evalRec(pr[1], env);
            return bindD(tv, [&](const SemPtr& a) {
                return mapD(rv, [&](const SemPtr& b) { return ifArrow(a, b); });
            });
        }
        case Rule::ArrI: return pointD(makeClosure(d, pr[0], env));
        case Rule::ArrE: {
            SemDist arg = evalRec(pr[0], env);
            SemDist fun = evalRec(pr[1], env);
            return bindD(fun, [&](const SemPtr& f) {
                return bindD(arg, [&](const SemPtr& a) { return applyFun(f, a); });
            });
        }
        case Rule::ArrES: {
            SemDist arg = evalRec(pr[0], env);
            SemDist fun = evalRec(pr[1], env);
            return bindD(fun, [&](const SemPtr& f) {
                return bindD(arg, [&](const SemPtr& a) {
                    SemPtr pairs = bilinearPair(a, f);
                    return kleisliOverVec(*pairs, [](const SemPtr& xf) { return applyFun(xf->right, xf->left); });
                });
            });
        }
        case Rule::ProdI: {
            const size_t count = productList(pr[0]->type).size();
            SemDist l = evalRec(pr[0], env);
            SemDist r = evalRec(pr[1], env);
            return bindD(l, [&](const SemPtr& a) {
                return mapD(r, [&](const SemPtr& b) { return semConcat(a, count, b); });
            });
        }
        case Rule::ProdEr:
        case Rule::ProdEl: {
            const bool head = d->rule == Rule::ProdEr;
            return mapD(evalRec(pr[0], env), [&](const SemPtr& v) {
                if (v->kind != SemKind::Pair) throw DomainMismatch("projection of a non-pair " + printSem(v));
                return head ? v->left : v->right;
            });
        }
        case Rule::CastR:
        case Rule::CastL: {
            const bool right = d->rule == Rule::CastR;
            auto items = productList(pr[0]->type->left);
            // castR: the first component is a combination of `lead`-tuples.
            // castL: `lead` plain components precede a trailing combination.
            const size_t lead = right ? productList(items.front()->left).size() : items.size() - 1;
            return mapD(evalRec(pr[0], env), [&](const SemPtr& v) {
                std::vector<std::pair<SemPtr, Scalar>> raw;
                for (const auto& [key, c] : asVec(v, "cast").vec) {
                    if (right) {
                        if (key->kind != SemKind::Pair) throw DomainMismatch("cast of a non-pair " + printSem(key));
                        for (const auto& [x, cx] : asVec(key->left, "cast").vec)
                            raw.emplace_back(semConcat(x, lead, key->right), c * cx);
                    } else {
                        std::vector<SemPtr> prefix;
                        SemPtr cur = key;
                        for (size_t i = 0; i < lead; ++i) {
                            if (cur->kind != SemKind::Pair) throw DomainMismatch("cast of a short tuple " + printSem(key));
                            prefix.push_back(cur->left);
                            cur = cur->right;
                        }
                        for (const auto& [y, cy] : asVec(cur, "cast").vec) {
                            SemPtr t = y;
                            for (size_t i = prefix.size(); i-- > 0;) t = semPair(prefix[i], t);
                            raw.emplace_back(t, c * cy);
                        }
                    }
                }
                return semVec(std::move(raw));
            });
        }
        case Rule::Par: {
            std::vector<SemDist::Entry> raw;
            for (size_t i = 0; i < pr.size(); ++i) {
                const SemDist branch = evalRec(pr[i], env);
                for (const auto& [q, w] : branch.entries()) raw.emplace_back(d->probs[i] * q, w);
            }
            return SemDist::fromUnchecked(std::move(raw));
        }
    }
    throw DomainMismatch("unknown rule");
}

}  // namespace

bool inDomain(const SemPtr& v, const TypePtr& a) {
    switch (a->kind) {
        case TypeKind::Bit: return v->kind == SemKind::Basis;
        case TypeKind::Unit: return v->kind == SemKind::Unit;
        case TypeKind::Prod:
            return v->kind == SemKind::Pair && inDomain(v->left, a->left) && inDomain(v->right, a->right);
        case TypeKind::Arrow: return v->kind == SemKind::Fun;
        case TypeKind::Span:
            if (v->kind != SemKind::Vec) return false;
            for (const auto& [k, c] : v->vec)
                if (!inDomain(k, a->left)) return false;
            return true;
    }
    return false;
}

SemDist evalDerivation(const DerivPtr& d, const SemEnv& env) {
    if (d->ctx) {
        for (const auto& [x, ty] : *d->ctx) {
            auto it = env.find(x);
            if (it == env.end()) throw DomainMismatch("no value for " + x);
            if (!inDomain(it->second, ty))
                throw DomainMismatch(printSem(it->second) + " is not in the domain of " + printType(ty));
        }
    }
    return evalRec(d, env);
}

SemDist denote(const TermPtr& t) { return evalDerivation(deriveMinimal({}, t)); }

SemDist denoteAt(const TermPtr& t, const TypePtr& a) { return evalDerivation(checkType({}, t, a)); }

SemDist denoteDist(const Dist<TermPtr>& d, const TypePtr& a) { return evalDerivation(checkDist({}, d, a)); }

namespace {

Scalar randomScalar(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double re = g(rng);
    double im = g(rng);
    return {re, im};
}

std::vector<SemPtr> probeRec(const TypePtr& a, std::mt19937_64& rng) {
    constexpr size_t kCap = 64;
    switch (a->kind) {
        case TypeKind::Bit: return {semBit(0), semBit(1)};
        case TypeKind::Unit: return {semUnit()};
        case TypeKind::Arrow: return {};
        case TypeKind::Prod: {
            auto ls = probeRec(a->left, rng);
            auto rs = probeRec(a->right, rng);
            std::vector<SemPtr> out;
            for (const auto& l : ls)
                for (const auto& r : rs) out.push_back(semPair(l, r));
            if (out.size() > kCap) {
                std::shuffle(out.begin(), out.end(), rng);
                out.resize(kCap);
            }
            return out;
        }
        case TypeKind::Span: {
            auto base = probeRec(a->left, rng);
            std::vector<SemPtr> out;
            for (const auto& b : base) out.push_back(etaEmbed(b));
            if (base.empty()) return out;
            for (int i = 0; i < 8; ++i) {
                std::vector<std::pair<SemPtr, Scalar>> combo;
                for (const auto& b : base) combo.emplace_back(b, randomScalar(rng));
                out.push_back(semVec(std::move(combo)));
            }
            return out;
        }
    }
    return {};
}

}  // namespace

std::vector<SemPtr> probeValues(const TypePtr& a) {
    std::mt19937_64 rng(0xC0FFEE);
    return probeRec(a, rng);
}

bool semEq(const SemPtr& x, const SemPtr& y, const TypePtr& a, double tol) {
    if (x->kind != y->kind) return false;
    switch (a->kind) {
        case TypeKind::Bit: return x->kind == SemKind::Basis && x->bit == y->bit;
        case TypeKind::Unit: return x->kind == SemKind::Unit;
        case TypeKind::Prod:
            return x->kind == SemKind::Pair && semEq(x->left, y->left, a->left, tol) &&
                   semEq(x->right, y->right, a->right, tol);
        case TypeKind::Arrow: {
            if (x->kind != SemKind::Fun) return false;
            if (x->fingerprint == y->fingerprint) return true;
            auto probes = probeValues(a->left);
            if (probes.empty()) return false;
            for (const auto& p : probes)
                if (!semEq(applyFun(x, p), applyFun(y, p), a->right, tol)) return false;
            return true;
        }
        case TypeKind::Span:
            if (x->kind != SemKind::Vec) return false;
            return vecEq(*x, *y, tol, [&](const SemPtr& k1, const SemPtr& k2) { return semEq(k1, k2, a->left, tol); });
    }
    return false;
}

bool semEq(const SemDist& x, const SemDist& y, const TypePtr& a, double tol) {
    return distEq<SemPtr>(x, y, tol, [&](const SemPtr& u, const SemPtr& v) { return semEq(u, v, a, tol); });
}

std::string printSem(const SemPtr& v) {
    switch (v->kind) {
        case SemKind::Basis: return v->bit ? "|1>" : "|0>";
        case SemKind::Unit: return "()";
        case SemKind::Pair: {
            std::string bits;
            SemPtr cur = v;
            while (cur->kind == SemKind::Pair && cur->left->kind == SemKind::Basis) {
                bits.push_back(cur->left->bit ? '1' : '0');
                cur = cur->right;
            }
            if (cur->kind == SemKind::Basis) return "|" + bits + (cur->bit ? "1" : "0") + ">";
            if (!bits.empty()) return "|" + bits + "> * " + printSem(cur);
            return "(" + printSem(v->left) + ", " + printSem(v->right) + ")";
        }
        case SemKind::Fun: return "<fun>";
        case SemKind::Vec: {
            std::string out = "{";
            for (size_t i = 0; i < v->vec.size(); ++i)
                out += (i ? ", " : "") + printSem(v->vec[i].first) + ": " + printScalar(v->vec[i].second);
            return out + "}";
        }
    }
    return "";
}

std::string printSemDist(const SemDist& d) {
    if (d.isPoint()) return printSem(d.only());
    auto es = d.entries();
    std::stable_sort(es.begin(), es.end(), [](const auto& a, const auto& b) { return a.first > b.first + kRuleTol; });
    std::string out = "[ ";
    for (size_t i = 0; i < es.size(); ++i)
        out += (i ? " || " : "") + printProbability(es[i].first) + ": " + printSem(es[i].second);
    return out + " ]";
}

nlohmann::json semToJson(const SemPtr& v) {
    using nlohmann::json;
    switch (v->kind) {
        case SemKind::Basis: return json{{"kind", "basis"}, {"bit", v->bit}};
        case SemKind::Unit: return json{{"kind", "unit"}};
        case SemKind::Pair: return json{{"kind", "pair"}, {"left", semToJson(v->left)}, {"right", semToJson(v->right)}};
        case SemKind::Fun: return json{{"kind", "fun"}, {"fingerprint", v->fingerprint}};
        case SemKind::Vec: {
            json terms = json::array();
            for (const auto& [k, c] : v->vec)
                terms.push_back(json{{"key", semToJson(k)}, {"re", c.real()}, {"im", c.imag()}});
            return json{{"kind", "vec"}, {"terms", terms}};
        }
    }
    return nullptr;
}

nlohmann::json semDistToJson(const SemDist& d) {
    nlohmann::json branches = nlohmann::json::array();
    for (const auto& [p, v] : d.entries()) branches.push_back({{"p", p}, {"value", semToJson(v)}});
    return {{"branches", branches}};
}

}  // namespace lams
