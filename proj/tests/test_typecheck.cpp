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

#include <set>

#include "lams/harness.hpp"
#include "lams/parser.hpp"
#include "lams/printer.hpp"
#include "lams/typecheck.hpp"

using namespace lams;

namespace {

std::string typeStr(const std::string& src) { return printType(typeOf(parseTerm(src))); }

bool derivable(const std::string& src, const std::string& type) {
    try {
        checkType({}, parseTerm(src), parseType(type));
        return true;
    } catch (const LamsError&) {
        return false;
    }
}

}  // namespace

TEST(Typecheck, WorkedExamples) {
    EXPECT_EQ(typeStr("(\\x:B. x*x) ((1/sqrt(2)).(|0>+|1>))"), "S(B^2)");
    EXPECT_EQ(typeStr("meas 2 (|000>+2.|110>+3.|001>+|111>)"), "B^2 * S(B)");
    EXPECT_EQ(typeStr("((1/sqrt(2)).(|0>+|1>)) * |0>"), "S(B) * B");
    EXPECT_EQ(typeStr("castR (((1/sqrt(2)).(|0>+|1>)) * |0>)"), "S(B^2)");
    EXPECT_EQ(typeStr("\\x:B. (if? |-> |+>) x"), "B => S(B)");
    EXPECT_EQ(typeStr("(if? |0> |1>) ((0.6).|1> + (0.8).|0>)"), "S(B)");
    EXPECT_EQ(typeStr("meas 1 zero(B*B)"), "B * S(B)");
}

TEST(Typecheck, BasisVariablesMayBeDuplicated) {
    EXPECT_EQ(typeStr("\\x:B. x*x"), "B => B^2");
    EXPECT_EQ(typeStr("\\x:B*B. (head x) * x"), "(B^2) => B^3");
}

TEST(Typecheck, SuperposedVariablesAreLinear) {
    EXPECT_THROW(typeOf(parseTerm("\\x:S(B). x*x")), LinearityViolation);
    EXPECT_THROW(typeOf(parseTerm("\\x:S(B). |0>")), LinearityViolation);
    EXPECT_NO_THROW(typeOf(parseTerm("\\x:S(B). x")));
    // Summands split their linear variables.
    EXPECT_THROW(typeOf(parseTerm("\\x:S(B). x + x")), LinearityViolation);
    EXPECT_NO_THROW(typeOf(parseTerm("\\x:B. x + x")));
}

TEST(Typecheck, ArityErrors) {
    EXPECT_THROW(typeOf(parseTerm("head |0>")), ArityError);
    EXPECT_THROW(typeOf(parseTerm("meas 3 (|00> + |11>)")), ArityError);
    EXPECT_NO_THROW(typeOf(parseTerm("meas 2 (|00> + |11>)")));
}

TEST(Typecheck, Mismatches) {
    EXPECT_THROW(typeOf(parseTerm("|0> |1>")), LamsError);
    EXPECT_THROW(typeOf(parseTerm("(\\x:B. x) (\\y:B. y)")), LamsError);
    EXPECT_THROW(typeOf(parseTerm("|0> + (\\x:B. x)")), LamsError);
}

TEST(Typecheck, JoinPrependsS) {
    EXPECT_TRUE(typeEq(joinTypes(tBit(), tSpan(tBit())), tSpan(tBit())));
    EXPECT_TRUE(typeEq(joinTypes(tSpan(tBit()), tSpanN(3, tBit())), tSpanN(3, tBit())));
    EXPECT_THROW(joinTypes(tBit(), tArrow(tBit(), tBit())), NoJoin);
}

TEST(Typecheck, SubsumptionAddsSpans) {
    EXPECT_TRUE(derivable("|0>", "B"));
    EXPECT_TRUE(derivable("|0>", "S(S(B))"));
    EXPECT_FALSE(derivable("|+>", "B"));
    EXPECT_TRUE(derivable("|+>", "S(S(B))"));
    // Moving a span across a product needs an explicit cast.
    EXPECT_FALSE(derivable("|0> * |+>", "S(B^2)"));
    EXPECT_TRUE(derivable("castL (|0> * |+>)", "S(B^2)"));
    EXPECT_FALSE(derivable("|+> * |0>", "B * S(B)"));
}

TEST(Typecheck, ProductTypingIsAssociative) {
    EXPECT_TRUE(derivable("|0> * (|1> * |0>)", "B^3"));
    EXPECT_TRUE(derivable("(|0> * |1>) * |0>", "S(B^2) * B"));
    EXPECT_TRUE(derivable("|+> * |0> * |1>", "S(B) * B^2"));
}

TEST(Typecheck, ParallelRuleNeedsEveryBranch) {
    auto d = Dist<TermPtr>::normalize({{0.5, mkKets("0")}, {0.5, mkKetPlus()}});
    DerivPtr p = checkDist({}, d, tSpan(tBit()));
    EXPECT_EQ(p->rule, Rule::Par);
    EXPECT_EQ(p->premises.size(), 2u);
    EXPECT_THROW(checkDist({}, d, tBit()), LamsError);
}

TEST(Typecheck, RootRulesOfCanonicalTrees) {
    EXPECT_EQ(checkType({}, parseTerm("2.|0>"), tSpan(tBit()))->rule, Rule::AlphaI);
    EXPECT_EQ(checkType({}, parseTerm("|0>"), tSpan(tBit()))->rule, Rule::SI);
    EXPECT_EQ(checkType({}, parseTerm("(\\x:B. x) |0>"), tBit())->rule, Rule::ArrE);
    EXPECT_EQ(checkType({}, parseTerm("castR (|+> * |0>)"), tSpan(tBn(2)))->rule, Rule::CastR);
}

// Every derivation built by the checker is in normal form for the commutation
// rules, and over a large corpus every typing rule except the parallel one
// (which only types distributions) is exercised.
TEST(Typecheck, GeneratedCorpusIsCanonicalAndCoversRules) {
    std::set<Rule> seen;
    for (uint64_t seed = 0; seed < 1000; ++seed) {
        Generated g = genTypedTerm(seed, 30);
        DerivPtr d = checkType({}, g.term, g.type);
        ASSERT_TRUE(isCanonical(d)) << printTerm(g.term);
        std::vector<Rule> rules;
        collectRules(d, rules);
        seen.insert(rules.begin(), rules.end());
    }
    for (Rule r : {Rule::Ax, Rule::Ax0, Rule::AxKet0, Rule::AxKet1, Rule::AlphaI, Rule::SumI, Rule::SI, Rule::SE,
                   Rule::If, Rule::ArrI, Rule::ArrE, Rule::ArrES, Rule::ProdI, Rule::ProdEr, Rule::ProdEl,
                   Rule::CastR, Rule::CastL})
        EXPECT_TRUE(seen.count(r)) << ruleName(r);
}

TEST(Typecheck, MinimalTypeIsDerivable) {
    for (uint64_t seed = 0; seed < 300; ++seed) {
        Generated g = genTypedTerm(seed, 30);
        TypePtr m = typeOf(g.term);
        EXPECT_NO_THROW(checkType({}, g.term, m)) << printTerm(g.term);
        // The target type is reachable from the minimal one by adding spans.
        EXPECT_TRUE(derivableAt({}, g.term, tSpan(g.type))) << printTerm(g.term);
    }
}
