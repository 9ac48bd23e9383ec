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


#include <gtest/gtest.h>

#include <cmath>

#include "lams/harness.hpp"
#include "lams/parser.hpp"
#include "lams/printer.hpp"
#include "oracles.hpp"

using namespace lams;

namespace {

DerivPtr lifted(const DerivPtr& d) {
    return std::make_shared<Derivation>(Derivation{Rule::SI, d->ctx, d->term, tSpan(d->type), {d}, {}});
}

bool containsHead(const TermPtr& t) {
    if (t->tag == Tag::Head) return true;
    for (const auto& k : t->kids)
        if (containsHead(k)) return true;
    return false;
}

}  // namespace

TEST(Statevector, KroneckerAndCasts) {
    Statevector s = statevectorEval(parseTerm("castR (((1/sqrt(2)).(|0>+|1>)) * |0>)"));
    ASSERT_EQ(s.n, 2);
    ASSERT_EQ(s.amps.size(), 4u);
    EXPECT_NEAR(std::abs(s.amps[0b00] - oracle::kInvSqrt2), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amps[0b10] - oracle::kInvSqrt2), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amps[0b01]), 0, 1e-12);
    EXPECT_THROW(statevectorEval(parseTerm("(\\x:B. x) |0>")), OutOfFragment);
}

TEST(Statevector, BornRule) {
    Statevector s = statevectorEval(parseTerm("|000>+2.|110>+3.|001>+|111>"));
    auto p = bornProbabilities(s, 2);
    ASSERT_EQ(p.size(), 4u);
    EXPECT_NEAR(p[0b00], oracle::kMeasP00, 1e-12);
    EXPECT_NEAR(p[0b11], oracle::kMeasP11, 1e-12);
    EXPECT_NEAR(p[0b01] + p[0b10], 0, 1e-12);
    auto z = bornProbabilities(statevectorEval(parseTerm("zero(B*B)")), 1);
    EXPECT_EQ(z[0], 1.0);
}

TEST(Oracle, HandWrittenProgramsAgree) {
    for (const char* src : {"(1/sqrt(2)).(|0>+|1>)", "castL (|0> * ((0.6).|0> + (0.8).|1>))",
                            "meas 1 ((1/sqrt(2)).|00> + (1/sqrt(2)).|11>)",
                            "meas 2 (|000>+2.|110>+3.|001>+|111>)", "meas 1 (|1> + (1i).|1>)", "meas 1 zero(B*B)"}) {
        EXPECT_EQ(oracleAgreement(parseTerm(src)), "") << src;
    }
}

TEST(Oracle, FragmentProgramsStayInFragment) {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        TermPtr t = genFragment(seed, 3, seed % 2 == 1);
        EXPECT_NO_THROW(typeOf(t)) << printTerm(t);
        TermPtr body = t->tag == Tag::Meas ? t->kids[0] : t;
        Statevector s = statevectorEval(body);
        EXPECT_LE(s.n, 3);
    }
}

TEST(Generator, DeterministicAndWithinBounds) {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        Generated a = genTypedTerm(seed, 30), b = genTypedTerm(seed, 30);
        EXPECT_TRUE(termIdentical(a.term, b.term));
        EXPECT_LE(termSize(a.term), 30);
        EXPECT_TRUE(isClosed(a.term));
        EXPECT_NO_THROW(checkType({}, a.term, a.type));
    }
}

TEST(Generator, RespectsOptions) {
    GenOptions noMeas;
    noMeas.allowMeasurement = false;
    for (uint64_t seed = 0; seed < 300; ++seed) {
        Generated g = genTypedTerm(seed, 30, noMeas);
        EXPECT_EQ(printTerm(g.term).find("meas"), std::string::npos) << printTerm(g.term);
    }
}

TEST(Suites, AllPassOnASmallCorpus) {
    for (const auto& name : suiteNames()) {
        SuiteOptions o;
        if (name == "normalization") o.maxSize = 40;
        SuiteReport r = runPropertySuite(name, 150, 2024, o);
        EXPECT_TRUE(r.ok()) << reportText(r);
        EXPECT_EQ(r.passed, 150);
    }
    EXPECT_THROW(runPropertySuite("nope", 1, 0, SuiteOptions{}), LamsError);
}

TEST(Suites, ReportsSerialize) {
    SuiteReport r;
    r.name = "soundness";
    r.trials = 2;
    r.passed = 1;
    r.failures.push_back({1, 99, "|0>", "B", "|0>", "detail"});
    nlohmann::json j = reportJson(r);
    EXPECT_EQ(j["suite"], "soundness");
    EXPECT_FALSE(j["ok"].get<bool>());
    EXPECT_EQ(j["failures"][0]["seed"], 99);
    EXPECT_NE(reportText(r).find("FAIL trial 1 seed 99"), std::string::npos);
}

TEST(Shrinker, FindsASmallWitness) {
    TermPtr big = parseTerm("(2.|0> + |1>) * (head (|01> * (tail |101>)))");
    TypePtr a = typeOf(big);
    TermPtr small = shrinkTerm(big, a, containsHead);
    EXPECT_TRUE(containsHead(small));
    EXPECT_LT(termSize(small), termSize(big));
    EXPECT_NO_THROW(checkType({}, small, a));
}

TEST(Equivalence, ContextsAreWellTyped) {
    auto ctxs = elimContexts(tSpan(tBit()), 2);
    ASSERT_FALSE(ctxs.empty());
    for (const auto& c : ctxs) EXPECT_NO_THROW(checkType({}, c.plug(mkKetPlus()), c.type)) << printTerm(c.body);
    EXPECT_FALSE(elimContexts(tArrow(tBit(), tBit()), 2).empty());
    EXPECT_GE(plugPool().size(), 5u);
}

TEST(Equivalence, BoundedCheck) {
    EXPECT_TRUE(opEquivCheck(parseTerm("(1/sqrt(2)).(|0>+|1>)"), parseTerm("|+>"), 2));
    EXPECT_TRUE(opEquivCheck(parseTerm("\\x:B. x"), parseTerm("if? |1> |0>"), 2));
    EXPECT_FALSE(opEquivCheck(parseTerm("|0>"), parseTerm("|1>"), 2));
    EXPECT_FALSE(opEquivCheck(parseTerm("|0> + zero(B)"), parseTerm("|+>"), 2));
}

TEST(Commutation, EachPairEvaluatesEqually) {
    // (1) scalar, (2) sum, (3) application, (4) parallel branches.
    DerivPtr scale = lifted(checkType({}, parseTerm("2.|+>"), tSpan(tBit())));
    DerivPtr sum = lifted(checkType({}, parseTerm("|0> + |+>"), tSpan(tBit())));
    DerivPtr app = lifted(deriveMinimal({}, parseTerm("(\\x:B. (if? |-> |+>) x) |1>")));
    DerivPtr par = lifted(checkDist({}, Dist<TermPtr>::normalize({{0.5, mkKet0()}, {0.5, mkKetPlus()}}), tSpan(tBit())));
    const std::vector<std::pair<DerivPtr, Rule>> cases = {
        {scale, Rule::AlphaI}, {sum, Rule::SumI}, {app, Rule::ArrES}, {par, Rule::Par}};
    for (const auto& [d, root] : cases) {
        DerivPtr alt = commuteDerivation(d);
        ASSERT_TRUE(alt);
        EXPECT_EQ(alt->rule, root);
        EXPECT_TRUE(typeEq(alt->type, d->type));
        EXPECT_TRUE(semEq(evalDerivation(d), evalDerivation(alt), d->type, 1e-9)) << printDerivation(d);
    }
    EXPECT_FALSE(commuteDerivation(deriveMinimal({}, parseTerm("|0>"))));
}
