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


#include "lams/typecheck.hpp"

#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "lams/error.hpp"
#include "lams/printer.hpp"

namespace lams {

std::string ruleName(Rule r) {
    switch (r) {
        case Rule::Ax: return "Ax";
        case Rule::Ax0: return "Ax0";
        case Rule::AxKet0: return "Ax|0>";
        case Rule::AxKet1: return "Ax|1>";
        case Rule::AxUnit: return "AxUnit";
        case Rule::AlphaI: return "αI";
        case Rule::SumI: return "+I";
        case Rule::SI: return "SI";
        case Rule::SE: return "SE";
        case Rule::If: return "If";
        case Rule::ArrI: return "⇒I";
        case Rule::ArrE: return "⇒E";
        case Rule::ArrES: return "⇒ES";
        case Rule::ProdI: return "×I";
        case Rule::ProdEr: return "×Er";
        case Rule::ProdEl: return "×El";
        case Rule::CastR: return "⇑r";
        case Rule::CastL: return "⇑l";
        case Rule::Par: return "∥";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Linearity

namespace {

using Usage = std::map<std::string, int>;

bool isLinearType(const TypePtr& t) { return !isBasisData(t); }

void addUsage(Usage& into, const Usage& from) {
    for (const auto& [k, v] : from) into[k] += v;
}

Usage usageRec(const TermPtr& t, std::map<std::string, TypePtr>& scope) {
    switch (t->tag) {
        case Tag::Var:
            return {{t->name, 1}};
        case Tag::Lam: {
            auto saved = scope.find(t->name) != scope.end() ? std::optional<TypePtr>(scope[t->name]) : std::nullopt;
            scope[t->name] = t->annot;
            Usage body = usageRec(t->kids[0], scope);
            if (saved)
                scope[t->name] = *saved;
            else
                scope.erase(t->name);
            int n = body.count(t->name) ? body[t->name] : 0;
            if (isLinearType(t->annot) && n != 1)
                throw LinearityViolation("variable '" + t->name + "' of type " + printType(t->annot) +
                                         " is used " + std::to_string(n) + " times in " + printTerm(t));
            body.erase(t->name);
            return body;
        }
        case Tag::IfTe: {
            Usage a = usageRec(t->kids[0], scope);
            Usage b = usageRec(t->kids[1], scope);
            std::set<std::string> names;
            for (const auto& [k, v] : a) names.insert(k);
            for (const auto& [k, v] : b) names.insert(k);
            Usage out;
            for (const auto& k : names) {
                int na = a.count(k) ? a[k] : 0, nb = b.count(k) ? b[k] : 0;
                auto it = scope.find(k);
                bool linear = it != scope.end() && isLinearType(it->second);
                if (linear && na != nb)
                    throw LinearityViolation("branches of " + printTerm(t) + " use '" + k + "' differently");
                out[k] = std::max(na, nb);
            }
            return out;
        }
        default: {
            Usage out;
            for (const auto& k : t->kids) addUsage(out, usageRec(k, scope));
            return out;
        }
    }
}

}  // namespace

std::map<std::string, int> checkLinearity(const Context& ctx, const TermPtr& t) {
    std::map<std::string, TypePtr> scope(ctx.begin(), ctx.end());
    Usage u = usageRec(t, scope);
    for (const auto& [name, ty] : ctx) {
        int n = u.count(name) ? u[name] : 0;
        if (isLinearType(ty) && n != 1)
            throw LinearityViolation("variable '" + name + "' of type " + printType(ty) + " is used " +
                                     std::to_string(n) + " times");
    }
    return u;
}

// ---------------------------------------------------------------------------
// Joins

namespace {

std::optional<TypePtr> lub(const TypePtr& a, const TypePtr& b);

// Aligns two flattened product lists. A run of plain components may meet a
// single S-headed component covering the same run, e.g. B * B against S(B^2).
std::optional<std::vector<TypePtr>> lubList(const std::vector<TypePtr>& la, size_t i, const std::vector<TypePtr>& lb,
                                            size_t j) {
    if (i == la.size() && j == lb.size()) return std::vector<TypePtr>{};
    if (i == la.size() || j == lb.size()) return std::nullopt;
    for (size_t m = 1; i + m <= la.size(); ++m) {
        for (size_t n = 1; j + n <= lb.size(); ++n) {
            if (m > 1 && n > 1) break;
            auto e = lub(tProdList({la.begin() + i, la.begin() + i + m}), tProdList({lb.begin() + j, lb.begin() + j + n}));
            if (!e) continue;
            if (auto rest = lubList(la, i + m, lb, j + n)) {
                rest->insert(rest->begin(), *e);
                return rest;
            }
        }
    }
    return std::nullopt;
}

std::optional<TypePtr> lubInner(const TypePtr& a, const TypePtr& b) {
    if (a->kind != b->kind) return std::nullopt;
    switch (a->kind) {
        case TypeKind::Bit:
        case TypeKind::Unit:
            return a;
        case TypeKind::Prod: {
            auto items = lubList(productList(a), 0, productList(b), 0);
            if (!items) return std::nullopt;
            return tProdList(*items);
        }
        case TypeKind::Arrow: {
            if (!typeEq(a->left, b->left)) return std::nullopt;
            auto r = lub(a->right, b->right);
            if (!r) return std::nullopt;
            return tArrow(a->left, *r);
        }
        case TypeKind::Span:
            return std::nullopt;
    }
    return std::nullopt;
}

// Componentwise join: outer S count is the maximum, products and arrow
// results are joined elementwise. A candidate only; callers verify it.
std::optional<TypePtr> lub(const TypePtr& a, const TypePtr& b) {
    int k = std::max(outerS(a), outerS(b));
    auto inner = lubInner(stripS(a), stripS(b));
    if (!inner) return std::nullopt;
    return tSpanN(k, *inner);
}

}  // namespace

TypePtr joinTypes(const TypePtr& a, const TypePtr& b) {
    int ka = outerS(a), kb = outerS(b);
    if (ka >= kb && typeEq(stripS(a, ka - kb), b)) return a;
    if (kb >= ka && typeEq(stripS(b, kb - ka), a)) return b;
    throw NoJoin("no join of " + printType(a) + " and " + printType(b));
}

// ---------------------------------------------------------------------------
// Checker

namespace {

class Checker {
public:
    TypePtr infer(const ContextPtr& ctx, const TermPtr& t) {
        auto key = std::make_pair(ctx.get(), t.get());
        auto it = inferMemo_.find(key);
        if (it != inferMemo_.end()) return it->second;
        TypePtr ty = inferUncached(ctx, t);
        inferMemo_[key] = ty;
        return ty;
    }

    DerivPtr derive(const ContextPtr& ctx, const TermPtr& t, const TypePtr& a) {
        auto key = std::make_tuple(ctx.get(), t.get(), printType(a));
        auto it = deriveMemo_.find(key);
        if (it != deriveMemo_.end()) return it->second;
        DerivPtr d;
        for (int k = outerS(a); k >= 0 && !d; --k) {
            d = checkRoot(ctx, t, stripS(a, k));
            if (d)
                for (int i = k; i-- > 0;) d = wrapSI(d, stripS(a, i));
        }
        deriveMemo_[key] = d;
        return d;
    }

    ContextPtr extend(const ContextPtr& ctx, const std::string& x, const TypePtr& ty) {
        auto key = std::make_tuple(ctx.get(), x, printType(ty));
        auto it = extMemo_.find(key);
        if (it != extMemo_.end()) return it->second;
        auto next = std::make_shared<Context>(*ctx);
        (*next)[x] = ty;
        extMemo_[key] = next;
        return next;
    }

private:
    static DerivPtr node(Rule r, const ContextPtr& ctx, const TermPtr& t, const TypePtr& ty,
                         std::vector<DerivPtr> prem = {}) {
        return std::make_shared<Derivation>(Derivation{r, ctx, t, ty, std::move(prem), {}});
    }

    static DerivPtr wrapSI(const DerivPtr& d, const TypePtr& ty) { return node(Rule::SI, d->ctx, d->term, ty, {d}); }

    [[noreturn]] static void mismatch(const TermPtr& t, const std::string& why) {
        throw TypeMismatch(why + " in " + printTerm(t));
    }

    TypePtr verified(const ContextPtr& ctx, const TermPtr& t, const TypePtr& ty) {
        if (!derive(ctx, t, ty)) mismatch(t, "no derivation at " + printType(ty));
        return ty;
    }

    TypePtr inferUncached(const ContextPtr& ctx, const TermPtr& t) {
        switch (t->tag) {
            case Tag::Var: {
                auto it = ctx->find(t->name);
                if (it == ctx->end()) mismatch(t, "unbound variable '" + t->name + "'");
                return it->second;
            }
            case Tag::Ket0:
            case Tag::Ket1:
                return tBit();
            case Tag::Unit:
                return tUnit();
            case Tag::Zero:
                return tSpan(t->annot);
            case Tag::Lam: {
                if (!isQubit(t->annot))
                    throw NotQubitType("abstraction parameter " + printType(t->annot) + " is not a qubit type");
                return tArrow(t->annot, infer(extend(ctx, t->name, t->annot), t->kids[0]));
            }
            case Tag::IfTe: {
                TypePtr a = infer(ctx, t->kids[0]), b = infer(ctx, t->kids[1]);
                auto j = lub(a, b);
                if (!j) mismatch(t, "branch types " + printType(a) + " and " + printType(b) + " have no join");
                verified(ctx, t->kids[0], *j);
                verified(ctx, t->kids[1], *j);
                return tArrow(tBit(), *j);
            }
            case Tag::Sum:
            case Tag::Scale: {
                std::optional<TypePtr> acc;
                for (const auto& k : t->kids) {
                    TypePtr kt = infer(ctx, k);
                    acc = acc ? lub(*acc, kt) : std::optional<TypePtr>(kt);
                    if (!acc) mismatch(t, "summand types have no join");
                }
                TypePtr ty = outerS(*acc) == 0 ? tSpan(*acc) : *acc;
                return verified(ctx, t, ty);
            }
            case Tag::App: {
                TypePtr tf = infer(ctx, t->kids[0]);
                TypePtr inner = stripS(tf);
                if (inner->kind != TypeKind::Arrow) mismatch(t, "applying a term of type " + printType(tf));
                if (outerS(tf) == 0 && derive(ctx, t->kids[1], inner->left)) return inner->right;
                if (outerS(tf) <= 1 && derive(ctx, t->kids[1], tSpan(inner->left))) return tSpan(inner->right);
                mismatch(t, "argument does not fit parameter " + printType(inner->left));
            }
            case Tag::Prod: {
                TypePtr a = infer(ctx, t->kids[0]), b = infer(ctx, t->kids[1]);
                if (!isQubit(a) || !isQubit(b))
                    throw NotQubitType("product component outside qubit types in " + printTerm(t));
                return tProd(a, b);
            }
            case Tag::Head:
            case Tag::Tail: {
                TypePtr a = infer(ctx, t->kids[0]);
                int n = 0;
                if (!isBasisData(a, &n)) mismatch(t, "list operation on " + printType(a));
                if (n <= 1) throw ArityError("list operation needs B^n with n > 1, got " + printType(a));
                return t->tag == Tag::Head ? tBit() : tBn(n - 1);
            }
            case Tag::Meas: {
                TypePtr a = infer(ctx, t->kids[0]);
                int n = 0;
                if (!isBasisData(stripS(a), &n) || n == 0) mismatch(t, "measuring a term of type " + printType(a));
                if (t->j > n)
                    throw ArityError("meas " + std::to_string(t->j) + " on " + std::to_string(n) + " qubits");
                return tProd(tBn(t->j), tSpan(tBn(n - t->j)));
            }
            case Tag::CastR:
            case Tag::CastL: {
                TypePtr a = infer(ctx, t->kids[0]);
                if (outerS(a) > 1) mismatch(t, "cast of " + printType(a));
                auto items = productList(stripS(a));
                if (items.size() < 2) mismatch(t, "cast of non-product " + printType(a));
                TypePtr& e = t->tag == Tag::CastR ? items.front() : items.back();
                if (e->kind == TypeKind::Span) e = e->left;
                return verified(ctx, t, tSpan(tProdList(items)));
            }
        }
        mismatch(t, "unknown term");
    }

    // x is associative on both sides: the flattened component list of the
    // term is cut into runs matching the flattened type list, where a run of
    // several components meets one S-headed item or one component meets a
    // run of items. `whole` is the term for ts[i..], reused at the root.
    DerivPtr productRoot(const ContextPtr& ctx, const TermPtr& whole, const std::vector<TermPtr>& ts, size_t i,
                         const std::vector<TypePtr>& items, size_t j) {
        auto run = [&](const std::vector<TermPtr>& xs, size_t from, size_t to) {
            if (to - from == xs.size() - i && from == i) return whole;
            TermPtr u = mkProdList({xs.begin() + from, xs.begin() + to});
            keepAlive_.push_back(u);  // memo keys are raw pointers
            return u;
        };
        const size_t nt = ts.size() - i, ny = items.size() - j;
        if (nt < 2 || ny < 2) return nullptr;
        for (size_t g = 1; g < nt; ++g) {
            for (size_t h = 1; h < ny; ++h) {
                if (g > 1 && h > 1) break;
                auto d1 = derive(ctx, run(ts, i, i + g), tProdList({items.begin() + j, items.begin() + j + h}));
                if (!d1) continue;
                TypePtr restType = tProdList({items.begin() + j + h, items.end()});
                DerivPtr d2 = derive(ctx, run(ts, i + g, ts.size()), restType);
                if (d2) return node(Rule::ProdI, ctx, whole, tProdList({items.begin() + j, items.end()}), {d1, d2});
            }
        }
        return nullptr;
    }

    DerivPtr checkRoot(const ContextPtr& ctx, const TermPtr& t, const TypePtr& a) {
        auto done = [&](Rule r, std::vector<DerivPtr> prem = {}) { return node(r, ctx, t, a, std::move(prem)); };
        auto sub = [&](const TermPtr& u, const TypePtr& ty) { return derive(ctx, u, ty); };
        switch (t->tag) {
            case Tag::Var: {
                auto it = ctx->find(t->name);
                return it != ctx->end() && typeEq(it->second, a) ? done(Rule::Ax) : nullptr;
            }
            case Tag::Ket0: return a->kind == TypeKind::Bit ? done(Rule::AxKet0) : nullptr;
            case Tag::Ket1: return a->kind == TypeKind::Bit ? done(Rule::AxKet1) : nullptr;
            case Tag::Unit: return a->kind == TypeKind::Unit ? done(Rule::AxUnit) : nullptr;
            case Tag::Zero: return typeEq(a, tSpan(t->annot)) ? done(Rule::Ax0) : nullptr;
            case Tag::Lam: {
                if (a->kind != TypeKind::Arrow || !typeEq(a->left, t->annot) || !isQubit(t->annot)) return nullptr;
                auto body = derive(extend(ctx, t->name, t->annot), t->kids[0], a->right);
                return body ? done(Rule::ArrI, {body}) : nullptr;
            }
            case Tag::IfTe: {
                if (a->kind != TypeKind::Arrow || a->left->kind != TypeKind::Bit) return nullptr;
                auto d1 = sub(t->kids[0], a->right);
                if (!d1) return nullptr;
                auto d2 = sub(t->kids[1], a->right);
                return d2 ? done(Rule::If, {d1, d2}) : nullptr;
            }
            case Tag::Sum:
            case Tag::Scale: {
                if (a->kind != TypeKind::Span) return nullptr;
                std::vector<DerivPtr> prem;
                for (const auto& k : t->kids) {
                    auto d = sub(k, a);
                    if (!d) return nullptr;
                    prem.push_back(d);
                }
                return done(t->tag == Tag::Sum ? Rule::SumI : Rule::AlphaI, std::move(prem));
            }
            case Tag::App: {
                TypePtr tf;
                try {
                    tf = infer(ctx, t->kids[0]);
                } catch (const LamsError&) {
                    return nullptr;
                }
                TypePtr inner = stripS(tf);
                if (inner->kind != TypeKind::Arrow) return nullptr;
                const TypePtr& psi = inner->left;
                if (outerS(tf) == 0) {
                    auto df = sub(t->kids[0], tArrow(psi, a));
                    auto da = df ? sub(t->kids[1], psi) : nullptr;
                    if (df && da) return done(Rule::ArrE, {da, df});
                }
                if (a->kind == TypeKind::Span && outerS(tf) <= 1) {
                    auto df = sub(t->kids[0], tSpan(tArrow(psi, a->left)));
                    auto da = df ? sub(t->kids[1], tSpan(psi)) : nullptr;
                    if (df && da) return done(Rule::ArrES, {da, df});
                }
                return nullptr;
            }
            case Tag::Prod:
                return productRoot(ctx, t, termList(t), 0, productList(a), 0);
            case Tag::Head:
            case Tag::Tail: {
                TypePtr bt;
                try {
                    bt = infer(ctx, t->kids[0]);
                } catch (const LamsError&) {
                    return nullptr;
                }
                int n = 0;
                if (!isBasisData(bt, &n) || n <= 1) return nullptr;
                TypePtr want = t->tag == Tag::Head ? tBit() : tBn(n - 1);
                if (!typeEq(a, want)) return nullptr;
                auto d = sub(t->kids[0], bt);
                return d ? done(t->tag == Tag::Head ? Rule::ProdEr : Rule::ProdEl, {d}) : nullptr;
            }
            case Tag::Meas: {
                TypePtr bt;
                try {
                    bt = infer(ctx, t->kids[0]);
                } catch (const LamsError&) {
                    return nullptr;
                }
                int n = 0;
                if (!isBasisData(stripS(bt), &n) || n == 0 || t->j > n) return nullptr;
                if (!typeEq(a, tProd(tBn(t->j), tSpan(tBn(n - t->j))))) return nullptr;
                TypePtr at = outerS(bt) == 0 ? tSpan(bt) : bt;
                auto d = sub(t->kids[0], at);
                return d ? done(Rule::SE, {d}) : nullptr;
            }
            case Tag::CastR:
            case Tag::CastL: {
                if (a->kind != TypeKind::Span) return nullptr;
                auto items = productList(a->left);
                for (size_t i = 1; i < items.size(); ++i) {
                    TypePtr psi = tProdList({items.begin(), items.begin() + i});
                    TypePtr phi = tProdList({items.begin() + i, items.end()});
                    TypePtr want = t->tag == Tag::CastR ? tSpan(tProd(tSpan(psi), phi)) : tSpan(tProd(psi, tSpan(phi)));
                    auto d = sub(t->kids[0], want);
                    if (d) return done(t->tag == Tag::CastR ? Rule::CastR : Rule::CastL, {d});
                }
                return nullptr;
            }
        }
        return nullptr;
    }

    std::map<std::pair<const void*, const void*>, TypePtr> inferMemo_;
    std::map<std::tuple<const void*, const void*, std::string>, DerivPtr> deriveMemo_;
    std::map<std::tuple<const void*, std::string, std::string>, ContextPtr> extMemo_;
    std::vector<TermPtr> keepAlive_;
};

}  // namespace

InferResult inferType(const Context& ctx, const TermPtr& t) {
    InferResult r;
    r.usage = checkLinearity(ctx, t);
    Checker c;
    r.type = c.infer(std::make_shared<Context>(ctx), t);
    return r;
}

bool derivableAt(const Context& ctx, const TermPtr& t, const TypePtr& a) {
    Checker c;
    return c.derive(std::make_shared<Context>(ctx), t, a) != nullptr;
}

DerivPtr checkType(const Context& ctx, const TermPtr& t, const TypePtr& a) {
    checkLinearity(ctx, t);
    Checker c;
    auto cp = std::make_shared<Context>(ctx);
    if (auto d = c.derive(cp, t, a)) return d;
    TypePtr min = c.infer(cp, t);  // rethrows the inference error, if any
    int k = outerS(a) - outerS(min);
    if (k < 0 || !typeEq(stripS(a, k), min))
        throw NotLiftable(printType(a) + " is not reachable from " + printType(min) + " for " + printTerm(t));
    throw TypeMismatch("no derivation of " + printTerm(t) + " at " + printType(a));
}

DerivPtr deriveMinimal(const Context& ctx, const TermPtr& t) {
    TypePtr ty = inferType(ctx, t).type;
    return checkType(ctx, t, ty);
}

TypePtr typeOf(const TermPtr& t) { return inferType({}, t).type; }

DerivPtr checkDist(const Context& ctx, const Dist<TermPtr>& d, const TypePtr& a) {
    if (d.isPoint()) return checkType(ctx, d.only(), a);
    for (const auto& [p, t] : d.entries()) checkLinearity(ctx, t);
    Checker c;
    auto cp = std::make_shared<Context>(ctx);
    // Same normal-form discipline as single terms: S_I above the Par node
    // whenever every branch admits it.
    for (int k = outerS(a); k >= 0; --k) {
        TypePtr ak = stripS(a, k);
        std::vector<DerivPtr> prem;
        std::vector<double> probs;
        for (const auto& [p, t] : d.entries()) {
            auto pd = c.derive(cp, t, ak);
            if (!pd) break;
            prem.push_back(pd);
            probs.push_back(p);
        }
        if (prem.size() != d.size()) continue;
        auto par = std::make_shared<Derivation>(Derivation{Rule::Par, cp, nullptr, ak, prem, probs});
        DerivPtr out = par;
        for (int i = k; i-- > 0;)
            out = std::make_shared<Derivation>(Derivation{Rule::SI, cp, nullptr, stripS(a, i), {out}, {}});
        return out;
    }
    throw TypeMismatch("distribution has a branch not of type " + printType(a));
}

bool isCanonical(const DerivPtr& d) {
    auto allSI = [&] {
        for (const auto& p : d->premises)
            if (p->rule != Rule::SI) return false;
        return !d->premises.empty();
    };
    switch (d->rule) {
        case Rule::AlphaI:
        case Rule::SumI:
            if (outerS(d->type) >= 2 && allSI()) return false;
            break;
        case Rule::ArrES:
        case Rule::Par:
            if (allSI()) return false;
            break;
        default:
            break;
    }
    for (const auto& p : d->premises)
        if (!isCanonical(p)) return false;
    return true;
}

namespace {

void printRec(const DerivPtr& d, int depth, std::ostringstream& os) {
    os << std::string(depth * 2, ' ') << ruleName(d->rule) << "  ";
    if (d->term) os << printTerm(d->term) << " : ";
    os << printType(d->type) << "\n";
    for (const auto& p : d->premises) printRec(p, depth + 1, os);
}

}  // namespace

std::string printDerivation(const DerivPtr& d) {
    std::ostringstream os;
    printRec(d, 0, os);
    return os.str();
}

void collectRules(const DerivPtr& d, std::vector<Rule>& out) {
    out.push_back(d->rule);
    for (const auto& p : d->premises) collectRules(p, out);
}

}  // namespace lams
