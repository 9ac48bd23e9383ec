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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Expected values come from tests/oracles.hpp, never from the library.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lams/cli.hpp"
#include "lams/harness.hpp"
#include "lams/parser.hpp"
#include "lams/printer.hpp"
#include "lams/rewrite.hpp"
#include "lams/semantics.hpp"
#include "oracles.hpp"

using namespace lams;

namespace {

constexpr uint64_t kSeed = 20261017;
const std::string kH = "(\\x:B. (if? |-> |+>) x)";

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<std::string> rulesOf(const std::string& src) {
    std::vector<std::string> out;
    for (const auto& s : traceReduction(parseTerm(src))) out.push_back(s.rule);
    return out;
}

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
}

// Single normal form of src, with the step count.
TermPtr nf(const std::string& src, long* steps = nullptr) {
    Dist<TermPtr> d = normalize(parseTerm(src), 100000, steps);
    if (!d.isPoint()) throw std::runtime_error(src + " is not deterministic");
    return d.only();
}

bool ampsNear(const TermPtr& t, const std::map<std::string, oracle::C>& want, double tol = 1e-9) {
    return oracle::maxDiff(oracle::amplitudes(t), want) <= tol;
}

std::string cli(const std::string& command, const std::string& term) {
    CliConfig cfg;
    cfg.command = command;
    cfg.terms = {term};
    std::ostringstream out, err;
    runCommand(cfg, out, err);
    return out.str() + err.str();
}

Outcome suite(const std::string& name, int trials, SuiteOptions o = {}) {
    SuiteReport r = runPropertySuite(name, trials, kSeed, o);
    Outcome out;
    out.require(r.ok() && r.trials == trials, reportText(r));
    if (out.ok) out.detail = std::to_string(r.passed) + "/" + std::to_string(r.trials) + " " + name;
    return out;
}

Outcome both(Outcome a, const Outcome& b) {
    a.require(b.ok, b.detail);
    if (a.ok) a.detail += "; " + b.detail;
    return a;
}

Outcome checkCnot() {
    Outcome o;
    const std::string src = "(\\x:B. x*x) ((1/sqrt(2)).(|0>+|1>))";
    long steps = 0;
    TermPtr t = nf(src, &steps);
    o.require(ampsNear(t, {{"00", oracle::kInvSqrt2}, {"11", oracle::kInvSqrt2}}), "amplitudes " + printTerm(t));
    o.require(steps <= 10, std::to_string(steps) + " steps");
    o.require(cli("check", src) == "S(B^2)\n", "check printed " + cli("check", src));
    o.require(cli("run", src) == "(0.70710678).(|00> + |11>)\n", "run printed " + cli("run", src));
    return o;
}

Outcome checkQuantumIf() {
    Outcome o;
    const std::string src = "(if? |0> |1>) ((0.6).|1> + (0.8).|0>)";
    o.require(ampsNear(nf(src), {{"0", oracle::kIfA0}, {"1", oracle::kIfA1}}), "amplitudes");
    auto rules = rulesOf(src);
    o.require(rules == std::vector<std::string>{"lin_r", "lin_r^α", "lin_r^α", "if₁", "if₀"}, "trace " + joined(rules));
    return o;
}

Outcome checkHadamard() {
    Outcome o;
    o.require(termEq(nf(kH + " |0>"), mkKetPlus()), "H|0>");
    o.require(termEq(nf(kH + " |1>"), mkKetMinus()), "H|1>");
    TermPtr h = parseTerm(kH);
    TypePtr a = typeOf(h);
    o.require(typeEq(a, tArrow(tBit(), tSpan(tBit()))), "type " + printType(a));
    o.require(printDomain(interpretType(a)) == "FunDom(BoolSet(1), SpanDom(BoolSet(1)))", printDomain(interpretType(a)));
    SemDist d = denote(h);
    o.require(d.isPoint() && inDomain(d.only(), a), "denotation outside its domain");
    if (!o.ok) return o;
    const double r = oracle::kInvSqrt2;
    auto row = [&](int b, double sign) {
        std::vector<std::pair<SemPtr, Scalar>> v{{semKets("0"), r}, {semKets("1"), sign * r}};
        SemDist out = applyFun(d.only(), semBit(b));
        return out.isPoint() && semValueEq(out.only(), semVec(std::move(v)), 1e-9);
    };
    o.require(row(0, 1) && row(1, -1), "table rows");
    return o;
}

Outcome checkCast() {
    Outcome o;
    const std::string src = "castR (((1/sqrt(2)).(|0>+|1>)) * |0>)";
    TypePtr in = typeOf(parseTerm(src)->kids[0]);
    o.require(typeEq(in, tProd(tSpan(tBit()), tBit())), "input " + printType(in));
    o.require(typeEq(typeOf(parseTerm(src)), tSpan(tBn(2))), "output " + printType(typeOf(parseTerm(src))));
    o.require(ampsNear(nf(src), {{"00", oracle::kInvSqrt2}, {"10", oracle::kInvSqrt2}}), "amplitudes");
    return o;
}

Outcome checkVectorChain() {
    Outcome o;
    const std::string src = "2.((1/2).|0>+|1>) - 2.|1>";
    o.require(termEq(nf(src), mkKet0()), "normal form " + printTerm(nf(src)));
    auto rules = rulesOf(src);
    o.require(rules == std::vector<std::string>{"dist^α", "prod", "unit", "fact", "zero_α", "neut"},
              "rules " + joined(rules));
    return o;
}

Outcome checkMeasurement() {
    Outcome o;
    Dist<TermPtr> d = normalize(parseTerm("meas 2 (|000>+2.|110>+3.|001>+|111>)"));
    o.require(d.size() == 2, std::to_string(d.size()) + " branches");
    bool saw00 = false, saw11 = false;
    for (const auto& [p, t] : d.entries()) {
        auto amps = oracle::amplitudes(t);
        if (amps.count("000")) {
            saw00 = true;
            o.require(std::abs(p - oracle::kMeasP00) <= 1e-9, "p(00)");
            o.require(ampsNear(t, {{"000", oracle::kInvSqrt10}, {"001", oracle::kThreeInvSqrt10}}), printTerm(t));
        } else {
            saw11 = true;
            o.require(std::abs(p - oracle::kMeasP11) <= 1e-9, "p(11)");
            o.require(ampsNear(t, {{"110", oracle::kTwoInvSqrt5}, {"111", oracle::kInvSqrt5}}), printTerm(t));
        }
    }
    o.require(saw00 && saw11, "missing outcome");
    return o;
}

Outcome checkSoundness() { return suite("soundness", 1000); }

Outcome checkSubjectReductionProgress() { return both(suite("subjectReduction", 1000), suite("progress", 1000)); }

Outcome checkNormalization() {
    SuiteOptions o;
    o.maxSize = 40;
    return suite("normalization", 1000, o);
}

Outcome checkConfluence() { return suite("confluenceSample", 500); }

Outcome checkDerivationIndependence() {
    SuiteOptions o;
    o.tol = 1e-9;
    return suite("derivationIndependence", 80, o);
}

Outcome checkOracleAgreement() { return suite("oracleAgreement", 500); }

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"cnot", checkCnot},
        {"quantum-if", checkQuantumIf},
        {"hadamard", checkHadamard},
        {"cast", checkCast},
        {"vector-chain", checkVectorChain},
        {"measurement", checkMeasurement},
        {"soundness", checkSoundness},
        {"subject-reduction+progress", checkSubjectReductionProgress},
        {"normalization", checkNormalization},
        {"confluence", checkConfluence},
        {"derivation-independence", checkDerivationIndependence},
        {"oracle-agreement", checkOracleAgreement},
    };
    const auto start = std::chrono::steady_clock::now();
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o.ok = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        failed += o.ok ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::fprintf(stderr, "acceptance: %zu criteria, %d failed, %.1fs\n", criteria.size(), failed, secs);
    // The whole run is budgeted at five minutes.
    if (secs > 300) return 1;
    return failed == 0 ? 0 : 1;
}
