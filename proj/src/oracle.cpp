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


#include <cmath>
#include <random>

#include "lams/harness.hpp"
#include "lams/printer.hpp"

namespace lams {

namespace {

Statevector kron(const Statevector& a, const Statevector& b) {
    Statevector out{a.n + b.n, std::vector<Scalar>(a.amps.size() * b.amps.size())};
    for (size_t i = 0; i < a.amps.size(); ++i)
        for (size_t k = 0; k < b.amps.size(); ++k) out.amps[i * b.amps.size() + k] = a.amps[i] * b.amps[k];
    return out;
}

int bitsOf(const std::string& bits) {
    int v = 0;
    for (char c : bits) v = v * 2 + (c == '1');
    return v;
}

}  // namespace

Statevector statevectorEval(const TermPtr& t) {
    switch (t->tag) {
        case Tag::Ket0: return {1, {1.0, 0.0}};
        case Tag::Ket1: return {1, {0.0, 1.0}};
        case Tag::Prod: return kron(statevectorEval(t->kids[0]), statevectorEval(t->kids[1]));
        case Tag::CastR:
        case Tag::CastL: return statevectorEval(t->kids[0]);
        case Tag::Scale: {
            Statevector s = statevectorEval(t->kids[0]);
            for (auto& a : s.amps) a *= t->scalar;
            return s;
        }
        case Tag::Sum: {
            Statevector s = statevectorEval(t->kids[0]);
            for (size_t i = 1; i < t->kids.size(); ++i) {
                Statevector r = statevectorEval(t->kids[i]);
                if (r.n != s.n) throw OutOfFragment("summands over different qubit counts in " + printTerm(t));
                for (size_t k = 0; k < s.amps.size(); ++k) s.amps[k] += r.amps[k];
            }
            return s;
        }
        case Tag::Zero: {
            int n = 0;
            if (!isBasisData(t->annot, &n) || n == 0) throw OutOfFragment("zero outside B^n: " + printTerm(t));
            return {n, std::vector<Scalar>(size_t{1} << n)};
        }
        default: throw OutOfFragment("not in the quantum fragment: " + printTerm(t));
    }
}

std::vector<double> bornProbabilities(const Statevector& s, int j) {
    std::vector<double> p(size_t{1} << j, 0.0);
    double total = 0;
    for (const auto& a : s.amps) total += std::norm(a);
    if (total <= kRuleTol * kRuleTol) {
        p[0] = 1.0;
        return p;
    }
    const int shift = s.n - j;
    for (size_t i = 0; i < s.amps.size(); ++i) p[i >> shift] += std::norm(s.amps[i]) / total;
    return p;
}

TermPtr genFragment(uint64_t seed, int maxQubits, bool withMeasurement) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto scalar = [&]() -> Scalar {
        static const Scalar pool[] = {2.0, -1.0, 0.5, {0.0, 1.0}, {0.6, -0.8}, 1.0 / std::sqrt(2.0), 3.0};
        return coin(0.7) ? pool[pick(0, 6)] : Scalar{std::normal_distribution<double>()(rng), 0.0};
    };
    auto kets = [&](int n) {
        std::string b;
        for (int i = 0; i < n; ++i) b.push_back(coin(0.5) ? '1' : '0');
        return mkKets(b);
    };
    std::function<TermPtr(int, int)> state = [&](int n, int depth) -> TermPtr {
        int choice = depth <= 0 ? pick(0, 1) : pick(0, 5);
        switch (choice) {
            case 0: return kets(n);
            case 1: return coin(0.1) ? mkZero(tBn(n)) : mkScale(scalar(), kets(n));
            case 2: return mkScale(scalar(), state(n, depth - 1));
            case 3:
            case 4: return mkSum(state(n, depth - 1), state(n, depth - 1));
            default: {
                if (n < 2) return mkSum(state(n, depth - 1), state(n, depth - 1));
                int k = pick(1, n - 1);
                return mkCastL(mkCastR(mkProd(state(k, depth - 1), state(n - k, depth - 1))));
            }
        }
    };
    const int n = pick(1, maxQubits);
    // An outer sum with a scaled ket keeps the minimal type at S(B^n).
    TermPtr t = mkSum(state(n, 3), mkScale(scalar(), kets(n)));
    if (withMeasurement) t = mkMeas(pick(1, n), t);
    return t;
}

namespace {

// Amplitudes of a normal ket sum over n qubits.
std::vector<Scalar> termAmps(const TermPtr& t, int n) {
    std::vector<Scalar> amps(size_t{1} << n);
    if (t->tag == Tag::Zero) return amps;
    std::vector<TermPtr> parts = t->tag == Tag::Sum ? t->kids : std::vector<TermPtr>{t};
    for (const auto& s : parts) {
        Scalar a = 1;
        TermPtr body = s;
        if (s->tag == Tag::Scale) {
            a = s->scalar;
            body = s->kids[0];
        }
        std::string bits;
        for (const auto& e : termList(body)) {
            if (e->tag == Tag::Unit) continue;
            if (e->tag != Tag::Ket0 && e->tag != Tag::Ket1) throw OutOfFragment("not a ket sum: " + printTerm(t));
            bits.push_back(e->tag == Tag::Ket1 ? '1' : '0');
        }
        if (static_cast<int>(bits.size()) != n) throw OutOfFragment("width mismatch in " + printTerm(t));
        amps[bitsOf(bits)] += a;
    }
    return amps;
}

std::vector<Scalar> vecAmps(const SemPtr& v, int n) {
    std::vector<Scalar> amps(size_t{1} << n);
    if (v->kind != SemKind::Vec) throw OutOfFragment("denotation is not a combination: " + printSem(v));
    for (const auto& [k, c] : v->vec) amps[bitsOf(semBits(k, n))] += c;
    return amps;
}

double maxDiff(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Normalized amplitudes of the suffix conditioned on prefix k.
std::vector<Scalar> conditional(const Statevector& s, int j, int k) {
    const size_t width = size_t{1} << (s.n - j);
    std::vector<Scalar> out(s.amps.begin() + k * width, s.amps.begin() + (k + 1) * width);
    double m = 0;
    for (const auto& a : out) m += std::norm(a);
    if (m <= kRuleTol * kRuleTol) {
        out.assign(width, 0.0);
        out[0] = 1.0;
        return out;
    }
    for (auto& a : out) a /= std::sqrt(m);
    return out;
}

struct Outcome {
    double p = 0;
    int prefix = 0;
    std::vector<Scalar> suffix;
};

// Rewriter payloads are |k> x phi with phi flattened into the product.
Outcome termOutcome(double p, const TermPtr& payload, int j, int n) {
    auto items = termList(payload);
    Outcome o{p, 0, {}};
    std::string prefix;
    for (int i = 0; i < j; ++i) prefix.push_back(items.at(i)->tag == Tag::Ket1 ? '1' : '0');
    o.prefix = bitsOf(prefix);
    std::vector<TermPtr> rest(items.begin() + j, items.end());
    // At j == n the rest is a scaled unit carrying the global phase.
    o.suffix = termAmps(mkProdList(rest), n - j);
    return o;
}

Outcome semOutcome(double p, const SemPtr& payload, int j, int n) {
    Outcome o{p, 0, {}};
    std::string prefix;
    SemPtr cur = payload;
    for (int i = 0; i < j; ++i) {
        prefix.push_back(cur->left->bit ? '1' : '0');
        cur = cur->right;
    }
    o.prefix = bitsOf(prefix);
    o.suffix = vecAmps(cur, n - j);
    return o;
}

std::string compareOutcomes(const char* who, const std::vector<Outcome>& got, const Statevector& s, int j,
                            double tol) {
    auto born = bornProbabilities(s, j);
    std::vector<double> p(born.size(), 0.0);
    for (const auto& o : got) p[o.prefix] += o.p;
    double tv = 0;
    for (size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - born[k]);
    tv /= 2;
    if (tv > tol) return std::string(who) + ": TV distance " + std::to_string(tv) + " to Born";
    for (const auto& o : got) {
        if (maxDiff(o.suffix, conditional(s, j, o.prefix)) > tol)
            return std::string(who) + ": post-measurement state differs for prefix " + std::to_string(o.prefix);
    }
    return "";
}

}  // namespace

std::string oracleAgreement(const TermPtr& t, double tol) {
    const bool measured = t->tag == Tag::Meas;
    const TermPtr state = measured ? t->kids[0] : t;
    Statevector sv = statevectorEval(state);
    const int n = sv.n;
    Dist<TermPtr> nf = normalize(t);
    SemDist sem = denote(t);
    if (!measured) {
        if (!nf.isPoint() || !sem.isPoint()) return "unexpected branching";
        auto rw = termAmps(nf.only(), n);
        auto dn = vecAmps(sem.only(), n);
        if (maxDiff(rw, sv.amps) > tol) return "rewriter vs statevector: " + printTerm(nf.only());
        if (maxDiff(dn, sv.amps) > tol) return "evaluator vs statevector: " + printSem(sem.only());
        if (maxDiff(rw, dn) > tol) return "rewriter vs evaluator";
        return "";
    }
    const int j = t->j;
    std::vector<Outcome> rw, dn;
    for (const auto& [p, u] : nf.entries()) rw.push_back(termOutcome(p, u, j, n));
    for (const auto& [p, v] : sem.entries()) dn.push_back(semOutcome(p, v, j, n));
    std::string msg = compareOutcomes("rewriter", rw, sv, j, tol);
    if (msg.empty()) msg = compareOutcomes("evaluator", dn, sv, j, tol);
    return msg;
}

}  // namespace lams
