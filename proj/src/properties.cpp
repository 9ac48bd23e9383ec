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


#include <chrono>
#include <random>

#include "lams/harness.hpp"
#include "lams/printer.hpp"

namespace lams {

namespace {

uint64_t mix(uint64_t seed, uint64_t i) {
    // splitmix64 finalizer; trial seeds stay independent of the trial count.
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

DerivPtr mkDeriv(Rule r, const DerivPtr& like, TermPtr t, TypePtr ty, std::vector<DerivPtr> prem,
                 std::vector<double> probs = {}) {
    return std::make_shared<Derivation>(Derivation{r, like->ctx, std::move(t), std::move(ty), std::move(prem),
                                                   std::move(probs)});
}

DerivPtr lift(const DerivPtr& d) { return mkDeriv(Rule::SI, d, d->term, tSpan(d->type), {d}); }

using Check = std::function<std::optional<std::string>(const Generated&)>;

bool distTermEq(const Dist<TermPtr>& a, const Dist<TermPtr>& b) {
    return distEq<TermPtr>(a, b, kScalarTol, [](const TermPtr& x, const TermPtr& y) { return termEq(x, y); });
}

std::optional<std::string> soundness(const Generated& g, const SuiteOptions& o) {
    Engine e;
    std::vector<TermPtr> frontier{g.term};
    long steps = 0;
    while (!frontier.empty()) {
        TermPtr u = frontier.back();
        frontier.pop_back();
        StepResult r = e.step(u, g.type);
        if (r.normal) continue;
        if (++steps > o.fuel) return "fuel exhausted";
        SemDist before = denoteAt(u, g.type);
        SemDist after = denoteDist(r.redex.result, g.type);
        if (!semEq(before, after, g.type, o.tol))
            return r.redex.rule + " at " + printPosition(r.redex.position) + " on " + printTerm(u) + ": " +
                   printSemDist(before) + " vs " + printSemDist(after);
        for (const auto& [p, w] : r.redex.result.entries()) frontier.push_back(w);
    }
    return std::nullopt;
}

std::optional<std::string> subjectReduction(const Generated& g, const SuiteOptions& o) {
    Engine e;
    std::vector<TermPtr> frontier{g.term};
    long steps = 0;
    while (!frontier.empty()) {
        TermPtr u = frontier.back();
        frontier.pop_back();
        StepResult r = e.step(u, g.type);
        if (r.normal) continue;
        if (++steps > o.fuel) return "fuel exhausted";
        for (const auto& [p, w] : r.redex.result.entries()) {
            try {
                checkType({}, w, g.type);
            } catch (const LamsError& ex) {
                return r.redex.rule + " produced " + printTerm(w) + ", not typable at " + printType(g.type) + ": " +
                       ex.what();
            }
            frontier.push_back(w);
        }
    }
    return std::nullopt;
}

std::optional<std::string> progress(const Generated& g, const SuiteOptions& o) {
    Dist<TermPtr> nf = normalize(g.term, o.fuel, nullptr, g.type);
    for (const auto& [p, w] : nf.entries())
        if (!isValue(w)) return "stuck non-value " + printTerm(w);
    return std::nullopt;
}

std::optional<std::string> normalization(const Generated& g, const SuiteOptions& o) {
    try {
        normalize(g.term, o.fuel, nullptr, g.type);
    } catch (const FuelExhausted& ex) {
        return std::string("no normal form within ") + std::to_string(o.fuel) + " steps";
    }
    return std::nullopt;
}

std::optional<std::string> confluence(const Generated& g, const SuiteOptions& o, uint64_t seed) {
    std::optional<Dist<TermPtr>> first;
    for (uint64_t s = 0; s < 5; ++s) {
        std::mt19937_64 rng(mix(seed, s));
        auto chooser = [&](const std::vector<Redex>& rs) {
            return std::uniform_int_distribution<size_t>(0, rs.size() - 1)(rng);
        };
        Dist<TermPtr> nf = normalizeWith(g.term, o.fuel, chooser, nullptr, g.type);
        if (!first) {
            first = nf;
        } else if (!distTermEq(*first, nf)) {
            return "strategy " + std::to_string(s) + " reached " + printDist(nf) + " instead of " + printDist(*first);
        }
    }
    return std::nullopt;
}

// Retries generation until the type satisfies `want`.
std::optional<Generated> genWhere(uint64_t seed, int size, const GenOptions& opts,
                                  const std::function<bool(const TypePtr&)>& want) {
    for (uint64_t k = 0; k < 400; ++k) {
        Generated g = genTypedTerm(mix(seed, k), size, opts);
        if (want(g.type)) return g;
    }
    return std::nullopt;
}

bool isSpanOfBasis(const TypePtr& a) { return a->kind == TypeKind::Span && isBasisData(a->left); }

std::optional<std::string> derivationPair(int pair, uint64_t seed, const SuiteOptions& o, std::string* shown) {
    DerivPtr d;
    GenOptions gen = o.gen;
    switch (pair) {
        case 1: {
            auto g = genWhere(seed, o.maxSize, gen, isSpanOfBasis);
            if (!g) return std::nullopt;
            d = lift(checkType({}, mkScale(Scalar{0.6, -0.8}, g->term), g->type));
            break;
        }
        case 2: {
            auto g1 = genWhere(seed, o.maxSize / 2, gen, isSpanOfBasis);
            if (!g1) return std::nullopt;
            auto g2 = genWhere(mix(seed, 99), o.maxSize / 2, gen, [&](const TypePtr& a) { return typeEq(a, g1->type); });
            if (!g2) return std::nullopt;
            d = lift(checkType({}, mkSum(g1->term, g2->term), g1->type));
            break;
        }
        case 3: {
            auto g = genWhere(seed, o.maxSize, gen, [](const TypePtr& a) { return a->kind == TypeKind::Arrow; });
            if (!g) return std::nullopt;
            int n = 0;
            if (!isBasisData(g->type->left, &n)) return std::nullopt;
            std::mt19937_64 rng(seed);
            std::string bits;
            for (int i = 0; i < n; ++i) bits.push_back(rng() & 1 ? '1' : '0');
            d = lift(deriveMinimal({}, mkApp(g->term, mkKets(bits))));
            break;
        }
        default: {
            auto g1 = genWhere(seed, o.maxSize / 2, gen, [](const TypePtr&) { return true; });
            if (!g1) return std::nullopt;
            auto g2 = genWhere(mix(seed, 77), o.maxSize / 2, gen, [&](const TypePtr& a) {
                return typeEq(a, g1->type);
            });
            if (!g2 || termEq(g1->term, g2->term)) return std::nullopt;
            auto dist = Dist<TermPtr>::normalize({{0.25, g1->term}, {0.75, g2->term}});
            d = checkDist({}, dist, g1->type);
            while (d->rule == Rule::SI) d = d->premises[0];
            d = lift(d);
            break;
        }
    }
    // The left tree is S_I over the introduction; the right one is its commuted form.
    DerivPtr alt = commuteDerivation(d);
    *shown = d->term ? printTerm(d->term) : "distribution";
    if (!alt) return "pair (" + std::to_string(pair) + ") did not apply to\n" + printDerivation(d);
    SemDist a = evalDerivation(d), b = evalDerivation(alt);
    if (!semEq(a, b, d->type, std::min(o.tol, 1e-9)))
        return "pair (" + std::to_string(pair) + "): " + printSemDist(a) + " vs " + printSemDist(b);
    return std::nullopt;
}

void collectSubterms(const TermPtr& t, std::vector<TermPtr>& out) {
    out.push_back(t);
    for (const auto& k : t->kids) collectSubterms(k, out);
}

TermPtr leafFor(const TypePtr& a) {
    switch (a->kind) {
        case TypeKind::Bit: return mkKet0();
        case TypeKind::Unit: return mkUnit();
        case TypeKind::Prod: {
            TermPtr l = leafFor(a->left), r = leafFor(a->right);
            return l && r ? mkProd(l, r) : nullptr;
        }
        case TypeKind::Span: return mkZero(a->left);
        case TypeKind::Arrow: return nullptr;
    }
    return nullptr;
}

// Every way of replacing one closed subterm by a leaf of its minimal type.
void leafReplacements(const TermPtr& t, std::vector<TermPtr>& out) {
    if (isClosed(t) && t->tag != Tag::Ket0 && t->tag != Tag::Unit && t->tag != Tag::Zero) {
        try {
            if (TermPtr l = leafFor(typeOf(t))) out.push_back(l);
        } catch (const LamsError&) {
        }
    }
    for (size_t i = 0; i < t->kids.size(); ++i) {
        std::vector<TermPtr> sub;
        leafReplacements(t->kids[i], sub);
        for (auto& s : sub) {
            auto kids = t->kids;
            kids[i] = s;
            out.push_back(rebuild(t, std::move(kids)));
        }
    }
}

}  // namespace

DerivPtr commuteDerivation(const DerivPtr& d) {
    if (!d || d->rule != Rule::SI) return nullptr;
    const DerivPtr& in = d->premises[0];
    switch (in->rule) {
        case Rule::AlphaI: return mkDeriv(Rule::AlphaI, in, in->term, d->type, {lift(in->premises[0])});
        case Rule::SumI: {
            std::vector<DerivPtr> prem;
            for (const auto& p : in->premises) prem.push_back(lift(p));
            return mkDeriv(Rule::SumI, in, in->term, d->type, std::move(prem));
        }
        case Rule::ArrE:
            return mkDeriv(Rule::ArrES, in, in->term, d->type, {lift(in->premises[0]), lift(in->premises[1])});
        case Rule::Par: {
            std::vector<DerivPtr> prem;
            for (const auto& p : in->premises) prem.push_back(lift(p));
            return mkDeriv(Rule::Par, in, nullptr, d->type, std::move(prem), in->probs);
        }
        default: return nullptr;
    }
}

TermPtr shrinkTerm(const TermPtr& t, const TypePtr& a, const std::function<bool(const TermPtr&)>& stillFails) {
    TermPtr best = t;
    for (int round = 0; round < 100; ++round) {
        std::vector<TermPtr> cands;
        collectSubterms(best, cands);
        cands.erase(cands.begin());
        leafReplacements(best, cands);
        std::stable_sort(cands.begin(), cands.end(),
                         [](const TermPtr& x, const TermPtr& y) { return termSize(x) < termSize(y); });
        bool improved = false;
        for (const auto& c : cands) {
            if (termSize(c) >= termSize(best) || !isClosed(c)) continue;
            try {
                checkType({}, c, a);
            } catch (const LamsError&) {
                continue;
            }
            bool fails = false;
            try {
                fails = stillFails(c);
            } catch (const LamsError&) {
                fails = true;
            }
            if (fails) {
                best = c;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return best;
}

const std::vector<std::string>& suiteNames() {
    static const std::vector<std::string> names = {"soundness",        "subjectReduction", "progress",
                                                   "normalization",    "confluenceSample", "derivationIndependence",
                                                   "oracleAgreement"};
    return names;
}

SuiteReport runPropertySuite(const std::string& name, int trials, uint64_t seed, const SuiteOptions& opts) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.name = name;
    rep.trials = trials;

    std::function<std::optional<std::string>(const Generated&, uint64_t)> check;
    GenOptions gen = opts.gen;
    if (name == "soundness") {
        check = [&](const Generated& g, uint64_t) { return soundness(g, opts); };
    } else if (name == "subjectReduction") {
        check = [&](const Generated& g, uint64_t) { return subjectReduction(g, opts); };
    } else if (name == "progress") {
        check = [&](const Generated& g, uint64_t) { return progress(g, opts); };
    } else if (name == "normalization") {
        check = [&](const Generated& g, uint64_t) { return normalization(g, opts); };
    } else if (name == "confluenceSample") {
        gen.allowMeasurement = false;
        check = [&](const Generated& g, uint64_t s) { return confluence(g, opts, s); };
    } else if (name != "derivationIndependence" && name != "oracleAgreement") {
        throw LamsError("UnknownSuite", "unknown suite " + name);
    }

    for (int i = 0; i < trials; ++i) {
        const uint64_t s = mix(seed, static_cast<uint64_t>(i));
        Failure f;
        f.trial = i;
        f.seed = s;
        std::optional<std::string> bad;
        try {
            if (name == "derivationIndependence") {
                std::string shown;
                bad = derivationPair(i % 4 + 1, s, opts, &shown);
                f.term = shown;
            } else if (name == "oracleAgreement") {
                TermPtr t = genFragment(s, 3, i % 3 == 0);
                f.term = printTerm(t);
                std::string msg = oracleAgreement(t);
                if (!msg.empty()) bad = msg;
            } else {
                Generated g = genTypedTerm(s, opts.maxSize, gen);
                f.term = printTerm(g.term);
                f.type = printType(g.type);
                bad = check(g, s);
                if (bad) {
                    TermPtr small = shrinkTerm(g.term, g.type, [&](const TermPtr& c) {
                        return check(Generated{c, g.type}, s).has_value();
                    });
                    f.shrunk = printTerm(small);
                }
            }
        } catch (const LamsError& ex) {
            bad = std::string(ex.kind()) + ": " + ex.what();
        }
        if (bad) {
            f.detail = *bad;
            rep.failures.push_back(std::move(f));
        } else {
            ++rep.passed;
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string reportText(const SuiteReport& r) {
    char head[256];
    std::snprintf(head, sizeof head, "suite %s: %d trials, %d passed, %zu failed (%.2fs)\n", r.name.c_str(), r.trials,
                  r.passed, r.failures.size(), r.seconds);
    std::string out = head;
    for (const auto& f : r.failures) {
        out += "  FAIL trial " + std::to_string(f.trial) + " seed " + std::to_string(f.seed) + "\n";
        out += "    term:   " + f.term + (f.type.empty() ? "" : " : " + f.type) + "\n";
        if (!f.shrunk.empty()) out += "    shrunk: " + f.shrunk + "\n";
        out += "    detail: " + f.detail + "\n";
    }
    return out;
}

nlohmann::json reportJson(const SuiteReport& r) {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : r.failures)
        fails.push_back({{"trial", f.trial},
                         {"seed", f.seed},
                         {"term", f.term},
                         {"type", f.type},
                         {"shrunk", f.shrunk},
                         {"detail", f.detail}});
    return {{"suite", r.name},   {"trials", r.trials},   {"passed", r.passed},
            {"failures", fails}, {"seconds", r.seconds}, {"ok", r.ok()}};
}

}  // namespace lams
