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

using namespace lams;

namespace {

void expectSyntaxErrorAt(const std::string& src, int line, int col) {
    try {
        parseTerm(src);
        FAIL() << "accepted: " << src;
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_EQ(e.column(), col) << e.what();
    }
}

}  // namespace

TEST(Parser, KetSugar) {
    EXPECT_TRUE(termIdentical(parseTerm("|01>"), mkProd(mkKet0(), mkKet1())));
    EXPECT_TRUE(termEq(parseTerm("|+>"), mkSum(mkScale(M_SQRT1_2, mkKet0()), mkScale(M_SQRT1_2, mkKet1()))));
    EXPECT_TRUE(termEq(parseTerm("|->"), mkSum(mkScale(M_SQRT1_2, mkKet0()), mkScale(-M_SQRT1_2, mkKet1()))));
}

TEST(Parser, MinusIsScaledSum) {
    TermPtr t = parseTerm("2.((1/2).|0>+|1>) - 2.|1>");
    TermPtr expect = mkSum(mkScale(2, mkSum(mkScale(0.5, mkKet0()), mkKet1())), mkScale(-2, mkKet1()));
    EXPECT_TRUE(termEq(t, expect)) << printTerm(t);
}

TEST(Parser, Scalars) {
    EXPECT_NEAR(std::abs(parseScalar("1/sqrt(2)") - Scalar{M_SQRT1_2, 0}), 0, 1e-15);
    EXPECT_NEAR(std::abs(parseScalar("(0.5-2i)") - Scalar{0.5, -2}), 0, 1e-15);
    EXPECT_NEAR(std::abs(parseScalar("3") - Scalar{3, 0}), 0, 0);
}

TEST(Parser, Types) {
    EXPECT_TRUE(typeEq(parseType("B*B"), tBn(2)));
    EXPECT_TRUE(typeEq(parseType("B^3"), tBn(3)));
    EXPECT_TRUE(typeEq(parseType("S(B) * B"), tProd(tSpan(tBit()), tBit())));
    EXPECT_TRUE(typeEq(parseType("B => S(B)"), tArrow(tBit(), tSpan(tBit()))));
    EXPECT_TRUE(typeEq(parseType("S(S(B))"), tSpan(tSpan(tBit()))));
}

TEST(Parser, ApplicationAndConditional) {
    TermPtr t = parseTerm("(\\x:B. x*x) ((1/sqrt(2)).(|0>+|1>))");
    ASSERT_EQ(t->tag, Tag::App);
    EXPECT_EQ(t->kids[0]->tag, Tag::Lam);
    TermPtr q = parseTerm("(if? |0> |1>) ((0.6).|1> + (0.8).|0>)");
    ASSERT_EQ(q->tag, Tag::App);
    EXPECT_EQ(q->kids[0]->tag, Tag::IfTe);
}

TEST(Parser, ErrorsCarryPositions) {
    expectSyntaxErrorAt("(\\x:B. x", 1, 9);
    expectSyntaxErrorAt("|0> +\n  |2>", 2, 3);
    expectSyntaxErrorAt("|0> $ |1>", 1, 5);
}

TEST(Parser, UnknownIdentifier) {
    EXPECT_THROW(parseTerm("y"), UnknownIdentifier);
    ParseOptions open;
    open.allowFreeVars = true;
    EXPECT_EQ(parseTerm("y", open)->tag, Tag::Var);
}

TEST(Parser, ArrowParameterMustBeQubit) {
    EXPECT_THROW(parseTerm("\\f:(B => B). f"), NonQubitParam);
    EXPECT_THROW(parseType("(B => B) => B"), NonQubitParam);
    EXPECT_NO_THROW(parseType("S(B) * B => S(B)"));
}

TEST(Parser, ProgramsExpandDefinitions) {
    SourceProgram p = parseProgram(
        "# Hadamard then measure\n"
        "def H = \\x:B. (if? |-> |+>) x;\n"
        "main = meas 1 (H |0>);\n");
    ASSERT_EQ(p.defs.size(), 1u);
    ASSERT_TRUE(p.main);
    EXPECT_TRUE(isClosed(p.main));
    EXPECT_EQ(p.main->tag, Tag::Meas);
    EXPECT_THROW(parseProgram("def a = |0>; def a = |1>;"), SyntaxError);
}

TEST(Printer, KnownRenderings) {
    EXPECT_EQ(printTerm(mkKets("011")), "|011>");
    EXPECT_EQ(printTerm(mkZero(tBn(2))), "zero(B^2)");
    EXPECT_EQ(printTerm(parseTerm("\\x:B. x*x")), "\\x:B. x * x");
    EXPECT_EQ(printTerm(mkScale(2, mkScale(3, mkKet0()))), "2.(3.|0>)");
}

TEST(Printer, FactoredHumanStyle) {
    TermPtr t = mkSum(mkScale(M_SQRT1_2, mkKets("00")), mkScale(M_SQRT1_2, mkKets("11")));
    EXPECT_EQ(printTerm(t, PrintStyle{8, true}), "(0.70710678).(|00> + |11>)");
    EXPECT_EQ(printTerm(t), "(0.7071067812).|00> + (0.7071067812).|11>");
}

TEST(Printer, DistributionsSortByProbability) {
    auto d = Dist<TermPtr>::normalize({{1.0 / 3, mkKet1()}, {2.0 / 3, mkKet0()}});
    EXPECT_EQ(printDist(d), "[ 2/3: |0> || 1/3: |1> ]");
}

// Round trip on generated terms: the default style is exact up to kScalarTol,
// seventeen decimals are bit-exact.
TEST(Printer, RoundTripsGeneratedTerms) {
    for (uint64_t seed = 0; seed < 400; ++seed) {
        Generated g = genTypedTerm(seed, 30);
        const std::string text = printTerm(g.term);
        TermPtr back = parseTerm(text);
        EXPECT_TRUE(termEq(back, g.term)) << text;
        TermPtr exact = parseTerm(printTerm(g.term, PrintStyle{17, false}));
        EXPECT_TRUE(termEq(exact, g.term, 0.0)) << text;
    }
}

TEST(Printer, RoundTripsFragmentPrograms) {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        TermPtr t = genFragment(seed, 3, seed % 2 == 0);
        EXPECT_TRUE(termEq(parseTerm(printTerm(t)), t)) << printTerm(t);
    }
}
