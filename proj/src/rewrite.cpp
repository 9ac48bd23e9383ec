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


#include "lams/rewrite.hpp"

#include <cmath>
#include <set>

#include "lams/printer.hpp"
#include "lams/typecheck.hpp"

namespace lams {

namespace {

Dist<TermPtr> pt(TermPtr t) { return Dist<TermPtr>::point(std::move(t)); }

// Replaces child i of `t` by each branch of `d`.
Dist<TermPtr> liftChild(const TermPtr& t, size_t i, const Dist<TermPtr>& d) {
    std::vector<Dist<TermPtr>::Entry> raw;
    for (const auto& [p, u] : d.entries()) {
        std::vector<TermPtr> kids = t->kids;
        kids[i] = u;
        raw.emplace_back(p, rebuild(t, std::move(kids)));
    }
    return Dist<TermPtr>::fromUnchecked(std::move(raw));
}

bool isBasisLam(const TermPtr& f) { return f->tag == Tag::Lam && isBasisData(f->annot); }

// Functions distributing over their argument: closed values of type Psi => A
// with Psi not S-headed. A superposed argument of such a function is only
// typable through the lifted application, which is linear in the argument.
bool isLinearFun(const TermPtr& f) {
    return (f->tag == Tag::Lam && outerS(f->annot) == 0) || f->tag == Tag::IfTe;
}

// Binary split of a sum: the first summand and the rest.
std::pair<TermPtr, TermPtr> splitSum(const TermPtr& s) {
    std::vector<TermPtr> rest(s->kids.begin() + 1, s->kids.end());
    return {s->kids[0], mkSum(std::move(rest))};
}

TermPtr sumWithout(const TermPtr& s, size_t i, size_t j = SIZE_MAX, TermPtr extra = nullptr) {
    std::vector<TermPtr> kids;
    for (size_t k = 0; k < s->kids.size(); ++k)
        if (k != i && k != j) kids.push_back(s->kids[k]);
    if (extra) kids.push_back(std::move(extra));
    return mkSum(std::move(kids));
}

bool isKetProduct(const TermPtr& t, std::string* bits) {
    bits->clear();
    for (const auto& e : termList(t)) {
        if (e->tag == Tag::Ket0)
            bits->push_back('0');
        else if (e->tag == Tag::Ket1)
            bits->push_back('1');
        else
            return false;
    }
    return true;
}

// Summands of a normal ket sum as (coefficient, bit string).
std::vector<std::pair<Scalar, std::string>> ketSummands(const TermPtr& t) {
    std::vector<TermPtr> parts = t->tag == Tag::Sum ? t->kids : std::vector<TermPtr>{t};
    std::vector<std::pair<Scalar, std::string>> out;
    size_t n = 0;
    for (const auto& s : parts) {
        Scalar a = 1;
        TermPtr body = s;
        if (s->tag == Tag::Scale) {
            a = s->scalar;
            body = s->kids[0];
        }
        std::string bits;
        if (!isKetProduct(body, &bits)) throw NotAKetSum("not a scaled ket product: " + printTerm(s));
        if (!out.empty() && bits.size() != n) throw NotAKetSum("ket products of different widths");
        n = bits.size();
        out.emplace_back(a, bits);
    }
    return out;
}

}  // namespace

Dist<TermPtr> measureProject(int j, const TermPtr& t) {
    auto summands = ketSummands(t);
    const int n = static_cast<int>(summands.front().second.size());
    if (j < 1 || j > n) throw ArityError("meas " + std::to_string(j) + " on " + std::to_string(n) + " qubits");
    double total = 0;
    for (const auto& [a, bits] : summands) total += std::norm(a);
    if (total <= kRuleTol * kRuleTol) throw ZeroNorm("measuring a zero-norm ket sum");

    std::map<std::string, std::vector<size_t>> classes;  // T_k keyed by prefix
    for (size_t i = 0; i < summands.size(); ++i) classes[summands[i].second.substr(0, j)].push_back(i);

    std::vector<Dist<TermPtr>::Entry> raw;
    for (const auto& [prefix, members] : classes) {
        double mass = 0;
        for (size_t i : members) mass += std::norm(summands[i].first);
        double p = mass / total;
        if (p < kRuleTol) continue;
        std::vector<TermPtr> phi;
        for (size_t i : members) {
            Scalar c = summands[i].first / std::sqrt(mass);
            TermPtr suffix = mkKets(summands[i].second.substr(j));
            phi.push_back(scalarEq(c, 1.0, kRuleTol) ? suffix : mkScale(c, suffix));
        }
        raw.emplace_back(p, mkProd(mkKets(prefix), mkSum(std::move(phi))));
    }
    return Dist<TermPtr>::renormalize(std::move(raw));
}

TypePtr Engine::typeOfClosed(const TermPtr& t) {
    auto it = typeCache_.find(t.get());
    if (it != typeCache_.end()) return it->second.second;
    TypePtr ty;
    try {
        ty = typeOf(t);
    } catch (const LamsError& e) {
        throw StuckIllTyped("untypable subterm " + printTerm(t) + ": " + e.what());
    }
    typeCache_[t.get()] = {t, ty};
    return ty;
}

namespace {

// Rules that copy or merge a subterm wait until it holds no pending
// measurement; a copy would otherwise sample the same outcome twice. A
// measurement under a binder or a quantum-if branch is not pending.
bool measFree(const TermPtr& t) {
    if (t->tag == Tag::Meas) return false;
    if (t->tag == Tag::Lam || t->tag == Tag::IfTe) return true;
    for (const auto& k : t->kids)
        if (!measFree(k)) return false;
    return true;
}

}  // namespace

void Engine::rootRules(const TermPtr& t, const Position& pos, std::vector<Local>& out, bool firstOnly) {
    auto emit = [&](const char* rule, Dist<TermPtr> d) {
        out.push_back({rule, std::move(d)});
        return firstOnly;
    };
    switch (t->tag) {
        case Tag::App: {
            const TermPtr& f = t->kids[0];
            const TermPtr& a = t->kids[1];
            if (isBasisLam(f) && isBasisTerm(a) && isClosed(a) && typeEq(typeOfClosed(a), f->annot))
                if (emit("β_b", pt(substitute(f->kids[0], f->name, a)))) return;
            // S-headed parameters take any argument; other non-basis parameters
            // only an argument that already has the parameter type, so the
            // substituted term keeps the variable's type.
            if (f->tag == Tag::Lam && !isBasisData(f->annot) && measFree(a) &&
                (outerS(f->annot) > 0 || derivableAt({}, a, f->annot)))
                if (emit("β_n", pt(substitute(f->kids[0], f->name, a)))) return;
            if (isLinearFun(f)) {
                if (a->tag == Tag::Sum && measFree(f)) {
                    auto [u, v] = splitSum(a);
                    if (emit("lin_r", pt(mkSum(mkApp(f, u), mkApp(f, v))))) return;
                }
                if (a->tag == Tag::Scale)
                    if (emit("lin_r^α", pt(mkScale(a->scalar, mkApp(f, a->kids[0]))))) return;
                TypePtr param = f->tag == Tag::IfTe ? tBit() : f->annot;
                if (a->tag == Tag::Zero && typeEq(a->annot, param)) {
                    TypePtr ft = typeOfClosed(f);
                    if (emit("lin_r^0", pt(mkZero(zeroAnnot(pos, ft->right))))) return;
                }
            }
            if (f->tag == Tag::Sum && measFree(a)) {
                auto [u, v] = splitSum(f);
                if (emit("lin_l", pt(mkSum(mkApp(u, a), mkApp(v, a))))) return;
            }
            if (f->tag == Tag::Scale)
                if (emit("lin_l^α", pt(mkScale(f->scalar, mkApp(f->kids[0], a))))) return;
            if (f->tag == Tag::Zero && f->annot->kind == TypeKind::Arrow)
                if (emit("lin_l^0", pt(mkZero(zeroAnnot(pos, f->annot->right))))) return;
            if (f->tag == Tag::IfTe && a->tag == Tag::Ket1)
                if (emit("if₁", pt(f->kids[0]))) return;
            if (f->tag == Tag::IfTe && a->tag == Tag::Ket0)
                if (emit("if₀", pt(f->kids[1]))) return;
            return;
        }
        case Tag::Head:
        case Tag::Tail: {
            const TermPtr& b = t->kids[0];
            if (b->tag == Tag::Prod && isBasisTerm(b->kids[0]))
                emit(t->tag == Tag::Head ? "head" : "tail", pt(t->tag == Tag::Head ? b->kids[0] : b->kids[1]));
            return;
        }
        case Tag::Scale: {
            const Scalar s = t->scalar;
            const TermPtr& b = t->kids[0];
            if (scalarEq(s, 1.0, kRuleTol))
                if (emit("unit", pt(b))) return;
            if (isZeroScalar(s)) {
                TypePtr ty = typeOfClosed(b);
                if (isBType(ty)) {
                    if (emit("zero_α", pt(mkZero(zeroAnnot(pos, ty))))) return;
                } else if (ty->kind == TypeKind::Span) {
                    if (emit("zero_α", pt(mkZero(zeroAnnot(pos, ty->left))))) return;
                }
            }
            if (b->tag == Tag::Zero)
                if (emit("zero", pt(b))) return;
            if (b->tag == Tag::Scale)
                if (emit("prod", pt(mkScale(s * b->scalar, b->kids[0])))) return;
            if (b->tag == Tag::Sum) {
                auto [u, v] = splitSum(b);
                if (emit("dist^α", pt(mkSum(mkScale(s, u), mkScale(s, v))))) return;
            }
            return;
        }
        case Tag::Sum: {
            const auto& ks = t->kids;
            for (size_t i = 0; i < ks.size(); ++i)
                if (ks[i]->tag == Tag::Zero)
                    if (emit("neut", pt(sumWithout(t, i)))) return;
            for (size_t i = 0; i < ks.size(); ++i) {
                for (size_t j = i + 1; j < ks.size(); ++j) {
                    const TermPtr& x = ks[i];
                    const TermPtr& y = ks[j];
                    if (!measFree(x) || !measFree(y)) continue;
                    bool sx = x->tag == Tag::Scale, sy = y->tag == Tag::Scale;
                    if (sx && sy && termEq(x->kids[0], y->kids[0]))
                        if (emit("fact", pt(sumWithout(t, i, j, mkScale(x->scalar + y->scalar, x->kids[0])))))
                            return;
                    if (sx && !sy && termEq(x->kids[0], y))
                        if (emit("fact¹", pt(sumWithout(t, i, j, mkScale(x->scalar + 1.0, y))))) return;
                    if (!sx && sy && termEq(y->kids[0], x))
                        if (emit("fact¹", pt(sumWithout(t, i, j, mkScale(y->scalar + 1.0, x))))) return;
                    if (!sx && !sy && termEq(x, y))
                        if (emit("fact²", pt(sumWithout(t, i, j, mkScale(2.0, x))))) return;
                }
            }
            return;
        }
        case Tag::CastR:
        case Tag::CastL: {
            const bool right = t->tag == Tag::CastR;
            auto cast = [&](TermPtr u) { return right ? mkCastR(std::move(u)) : mkCastL(std::move(u)); };
            const TermPtr& b = t->kids[0];
            if (b->tag == Tag::Sum) {
                auto [u, v] = splitSum(b);
                if (emit("distcast^+", pt(mkSum(cast(u), cast(v))))) return;
            }
            if (b->tag == Tag::Scale)
                if (emit("distcast^α", pt(mkScale(b->scalar, cast(b->kids[0]))))) return;
            if (b->tag == Tag::Zero) {
                auto items = productList(b->annot);
                if (items.size() >= 2) {
                    TypePtr& e = right ? items.front() : items.back();
                    if (e->kind == TypeKind::Span && e->left->kind == TypeKind::Span) {
                        e = e->left;
                        if (emit(right ? "distcast0_r" : "distcast0_l", pt(mkZero(zeroAnnot(pos, tProdList(items))))))
                            return;
                    } else if (e->kind == TypeKind::Span) {
                        e = e->left;
                        if (emit(right ? "neutcast0_r" : "neutcast0_l", pt(mkZero(zeroAnnot(pos, tProdList(items))))))
                            return;
                    }
                }
            }
            if (b->tag == Tag::Prod) {
                auto items = termList(b);
                TermPtr elem = right ? items.front() : items.back();
                std::vector<TermPtr> rest(right ? items.begin() + 1 : items.begin(),
                                          right ? items.end() : items.end() - 1);
                TermPtr other = mkProdList(rest);
                auto pair = [&](TermPtr x) { return right ? mkProd(std::move(x), other) : mkProd(other, std::move(x)); };
                if (elem->tag == Tag::Sum && measFree(other)) {
                    auto [u, v] = splitSum(elem);
                    if (emit(right ? "distsum_r" : "distsum_l", pt(mkSum(cast(pair(u)), cast(pair(v)))))) return;
                }
                if (elem->tag == Tag::Scale)
                    if (emit(right ? "distscal_r" : "distscal_l",
                             pt(mkScale(elem->scalar, cast(pair(elem->kids[0]))))))
                        return;
                if (elem->tag == Tag::Zero) {
                    TypePtr ot = typeOfClosed(other);
                    TypePtr z = right ? tProd(elem->annot, ot) : tProd(ot, elem->annot);
                    if (emit(right ? "distzero_r" : "distzero_l", pt(mkZero(zeroAnnot(pos, z))))) return;
                }
                bool plain = isBasisTerm(elem);
                if (!plain && isValue(elem) && elem->tag != Tag::Sum && elem->tag != Tag::Scale &&
                    elem->tag != Tag::Zero)
                    plain = typeOfClosed(elem)->kind != TypeKind::Span;
                if (plain)
                    if (emit(right ? "neutcast_r" : "neutcast_l", pt(b))) return;
            }
            return;
        }
        case Tag::Meas: {
            const TermPtr& b = t->kids[0];
            if (b->tag == Tag::Zero) {
                int n = 0;
                if (isBasisData(stripS(b->annot), &n) && n >= 1) {
                    TermPtr zeros = mkKets(std::string(n, '0'));
                    emit("proj_z", pt(t->j == n ? mkProd(zeros, mkUnit()) : zeros));
                }
                return;
            }
            emit("proj", measureProject(t->j, b));
            return;
        }
        default:
            return;
    }
}

std::optional<std::pair<Engine::Local, Position>> Engine::stepAt(const TermPtr& t, Position& pos) {
    auto viaChild = [&](size_t i) -> std::optional<std::pair<Local, Position>> {
        pos.push_back(static_cast<int>(i));
        auto h = stepAt(t->kids[i], pos);
        pos.pop_back();
        if (!h) return std::nullopt;
        h->first.out = liftChild(t, i, h->first.out);
        return h;
    };
    auto atRoot = [&]() -> std::optional<std::pair<Local, Position>> {
        std::vector<Local> hits;
        rootRules(t, pos, hits, true);
        if (hits.empty()) return std::nullopt;
        return std::make_pair(std::move(hits.front()), pos);
    };
    switch (t->tag) {
        case Tag::Sum:
            for (size_t i = 0; i < t->kids.size(); ++i)
                if (auto h = viaChild(i)) return h;
            return atRoot();
        case Tag::Scale:
            if (auto h = viaChild(0)) return h;
            return atRoot();
        case Tag::Prod:
            if (auto h = viaChild(0)) return h;
            return viaChild(1);
        case Tag::App: {
            const TermPtr& f = t->kids[0];
            if (!isValue(f)) {
                if (auto h = viaChild(0)) return h;
            } else if (!isValue(t->kids[1]) && (isLinearFun(f) || !measFree(t->kids[1]))) {
                if (auto h = viaChild(1)) return h;
            }
            return atRoot();
        }
        case Tag::Head:
        case Tag::Tail:
        case Tag::CastR:
        case Tag::CastL:
            if (!isValue(t->kids[0]))
                if (auto h = viaChild(0)) return h;
            return atRoot();
        case Tag::Meas:
            if (auto h = viaChild(0)) return h;
            return atRoot();
        default:
            return std::nullopt;
    }
}

void Engine::reset(const TermPtr& t, const TypePtr& a) {
    root_ = t;
    rootType_ = a;
    rootDeriv_ = nullptr;
    derivTried_ = false;
}

TypePtr Engine::typeAt(const Position& pos) {
    if (!derivTried_) {
        derivTried_ = true;
        try {
            TypePtr a = rootType_ ? rootType_ : typeOf(root_);
            rootDeriv_ = checkType({}, root_, a);
        } catch (const LamsError&) {
            rootDeriv_ = nullptr;
        }
    }
    DerivPtr d = rootDeriv_;
    for (int i : pos) {
        if (!d) return nullptr;
        while (d->rule == Rule::SI) d = d->premises[0];
        // =>E and =>ES list the argument first.
        const bool app = d->rule == Rule::ArrE || d->rule == Rule::ArrES;
        size_t k = app ? 1 - static_cast<size_t>(i) : static_cast<size_t>(i);
        if (k >= d->premises.size()) return nullptr;
        d = d->premises[k];
    }
    return d ? d->type : nullptr;
}

TypePtr Engine::zeroAnnot(const Position& pos, const TypePtr& fallback) {
    TypePtr at = typeAt(pos);
    return at && at->kind == TypeKind::Span ? at->left : fallback;
}

StepResult Engine::step(const TermPtr& t, const TypePtr& a) {
    reset(t, a);
    StepResult r;
    Position pos;
    auto h = stepAt(t, pos);
    if (!h) return r;
    r.normal = false;
    r.redex = Redex{h->first.rule, h->second, h->first.out};
    return r;
}

void Engine::collect(const TermPtr& t, Position& pos, std::vector<std::pair<Local, Position>>& out) {
    const size_t before = out.size();
    auto visit = [&](size_t i) {
        pos.push_back(static_cast<int>(i));
        collect(t->kids[i], pos, out);
        pos.pop_back();
    };
    switch (t->tag) {
        case Tag::Sum:
            for (size_t i = 0; i < t->kids.size(); ++i) visit(i);
            break;
        case Tag::Scale:
        case Tag::Head:
        case Tag::Tail:
        case Tag::CastR:
        case Tag::CastL:
        case Tag::Meas:
            visit(0);
            break;
        case Tag::Prod:
            visit(0);
            visit(1);
            break;
        case Tag::App:
            visit(0);
            if (isLinearFun(t->kids[0]) || !measFree(t->kids[1])) visit(1);
            break;
        default:
            break;
    }
    // proj only on a body with no redex left.
    if (t->tag == Tag::Meas && out.size() > before) return;
    std::vector<Local> hits;
    rootRules(t, pos, hits, false);
    for (auto& h : hits) out.push_back({std::move(h), pos});
}

namespace {

// Rebuilds `t` with the subterm at `pos` replaced by each branch of `local`.
Dist<TermPtr> plugAt(const TermPtr& t, const Position& pos, size_t depth, const Dist<TermPtr>& local) {
    if (depth == pos.size()) return local;
    size_t i = static_cast<size_t>(pos[depth]);
    return liftChild(t, i, plugAt(t->kids[i], pos, depth + 1, local));
}

}  // namespace

std::vector<Redex> Engine::allRedexes(const TermPtr& t, const TypePtr& a) {
    reset(t, a);
    std::vector<std::pair<Local, Position>> found;
    Position pos;
    collect(t, pos, found);
    std::vector<Redex> out;
    for (auto& [l, p] : found) out.push_back(Redex{l.rule, p, plugAt(t, p, 0, l.out)});
    return out;
}

StepResult step(const TermPtr& t, const TypePtr& a) {
    Engine e;
    return e.step(t, a);
}

namespace {

// Shared driver: repeatedly rewrites the first non-normal branch in
// canonical order until every branch is normal.
template <class Next>
Dist<TermPtr> drive(const TermPtr& t, long fuel, long* stepsOut, std::vector<TraceStep>* trace, Next next) {
    Dist<TermPtr> cur = Dist<TermPtr>::point(t);
    std::set<TermPtr> normal;  // owning, so addresses are never reused
    long steps = 0;
    for (;;) {
        bool progressed = false;
        for (size_t b = 0; b < cur.size(); ++b) {
            const auto& [p, u] = cur.entries()[b];
            if (normal.count(u)) continue;
            std::optional<Redex> r = next(u);
            if (!r) {
                normal.insert(u);
                continue;
            }
            if (steps >= fuel) {
                if (stepsOut) *stepsOut = steps;
                throw FuelExhausted(cur, steps);
            }
            std::vector<Dist<TermPtr>::Entry> raw;
            for (size_t c = 0; c < cur.size(); ++c)
                if (c != b) raw.push_back(cur.entries()[c]);
            for (const auto& [q, w] : r->result.entries()) raw.emplace_back(p * q, w);
            cur = Dist<TermPtr>::fromUnchecked(std::move(raw));
            ++steps;
            if (trace) trace->push_back({r->rule, r->position, cur});
            progressed = true;
            break;
        }
        if (!progressed) break;
    }
    if (stepsOut) *stepsOut = steps;
    return cur;
}

}  // namespace

namespace {

TypePtr holdingType(const TermPtr& t, const TypePtr& type) {
    if (type) return type;
    try {
        return typeOf(t);
    } catch (const LamsError&) {
        return nullptr;  // untyped input: rules fall back to minimal types
    }
}

}  // namespace

Dist<TermPtr> normalize(const TermPtr& t, long fuel, long* stepsOut, const TypePtr& type) {
    Engine e;
    TypePtr a = holdingType(t, type);
    return drive(t, fuel, stepsOut, nullptr, [&](const TermPtr& u) -> std::optional<Redex> {
        auto r = e.step(u, a);
        if (r.normal) return std::nullopt;
        return r.redex;
    });
}

std::vector<TraceStep> traceReduction(const TermPtr& t, long fuel, const TypePtr& type) {
    Engine e;
    TypePtr a = holdingType(t, type);
    std::vector<TraceStep> trace;
    drive(t, fuel, nullptr, &trace, [&](const TermPtr& u) -> std::optional<Redex> {
        auto r = e.step(u, a);
        if (r.normal) return std::nullopt;
        return r.redex;
    });
    return trace;
}

Dist<TermPtr> normalizeWith(const TermPtr& t, long fuel, const RedexChooser& choose, long* stepsOut,
                            const TypePtr& type) {
    Engine e;
    TypePtr a = holdingType(t, type);
    return drive(t, fuel, stepsOut, nullptr, [&](const TermPtr& u) -> std::optional<Redex> {
        auto all = e.allRedexes(u, a);
        if (all.empty()) return std::nullopt;
        return all[choose(all) % all.size()];
    });
}

std::string printPosition(const Position& p) {
    if (p.empty()) return "ε";
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
    return s;
}

}  // namespace lams
