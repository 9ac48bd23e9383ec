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
#include "lams/semantics.hpp"
#include "oracles.hpp"

using namespace lams;
using oracle::C;

namespace {

SemPtr vec(std::vector<std::pair<std::string, C>> combo) {
    std::vector<std::pair<SemPtr, Scalar>> out;
    for (const auto& [bits, c] : combo) out.emplace_back(semKets(bits), c);
    return semVec(std::move(out));
}

SemPtr only(const SemDist& d) {
    EXPECT_TRUE(d.isPoint());
    return d.entries().front().second;
}

SemPtr denoteOne(const std::string& src) { return only(denote(parseTerm(src))); }

bool close(const SemPtr& a, const SemPtr& b, double tol = 1e-9) { return semValueEq(a, b, tol); }

}  // namespace

TEST(Domains, SpanLayersStayDistinct) {
    EXPECT_EQ(printDomain(interpretType(tBn(2))), "ProdDom(BoolSet(1), BoolSet(1))");
    EXPECT_EQ(printDomain(interpretType(tSpan(tBit()))), "SpanDom(BoolSet(1))");
    EXPECT_EQ(printDomain(interpretType(tSpan(tSpan(tBit())))), "SpanDom(SpanDom(BoolSet(1)))");
    EXPECT_EQ(printDomain(interpretType(tArrow(tBit(), tSpan(tBit())))), "FunDom(BoolSet(1), SpanDom(BoolSet(1)))");
}

TEST(Values, CombinationsMergeAndDropZeros) {
    SemPtr v = vec({{"0", 1.0}, {"1", 2.0}, {"0", -1.0}});
    ASSERT_EQ(v->vec.size(), 1u);
    EXPECT_TRUE(close(v, vec({{"1", 2.0}})));
    EXPECT_EQ(semBits(semKets("0110"), 4), "0110");
}

TEST(Values, MonadLaws) {
    SemPtr v = vec({{"0", 0.6}, {"1", 0.8}});
    EXPECT_TRUE(close(muFlatten(etaEmbed(v)), v));
    SemPtr nested = semVec({{etaEmbed(semBit(0)), 2.0}, {v, 3.0}});
    EXPECT_TRUE(close(muFlatten(nested), vec({{"0", 2.0 + 1.8}, {"1", 2.4}})));
    EXPECT_THROW(muFlatten(semVec({{semBit(0), 1.0}})), KeyNotVec);
}

TEST(Values, BilinearPairing) {
    SemPtr p = bilinearPair(vec({{"0", 1.0}, {"1", 2.0}}), vec({{"1", 3.0}}));
    EXPECT_TRUE(close(p, vec({{"01", 3.0}, {"11", 6.0}})));
}

TEST(Values, DeepSumAndScale) {
    SemPtr a = vec({{"0", 1.0}}), b = vec({{"0", 2.0}, {"1", 1.0}});
    EXPECT_TRUE(close(deepSum(a, b, 1), vec({{"0", 3.0}, {"1", 1.0}})));
    EXPECT_TRUE(close(deepScale(2.0, b, 1), vec({{"0", 4.0}, {"1", 2.0}})));
    // At depth two the operations act on the inner layer.
    SemPtr ea = etaEmbed(a), eb = etaEmbed(b);
    EXPECT_TRUE(close(deepSum(ea, eb, 2), etaEmbed(vec({{"0", 3.0}, {"1", 1.0}}))));
    EXPECT_TRUE(close(deepScale(C{0, 1}, eb, 2), etaEmbed(vec({{"0", C{0, 2}}, {"1", C{0, 1}}}))));
    EXPECT_THROW(deepScale(2.0, semBit(0), 1), DepthMismatch);
}

TEST(Denotation, WorkedExamples) {
    EXPECT_TRUE(close(denoteOne("(\\x:B. x*x) ((1/sqrt(2)).(|0>+|1>))"),
                      vec({{"00", oracle::kInvSqrt2}, {"11", oracle::kInvSqrt2}})));
    EXPECT_TRUE(close(denoteOne("(if? |0> |1>) ((0.6).|1> + (0.8).|0>)"), vec({{"0", 0.6}, {"1", 0.8}})));
    EXPECT_TRUE(close(denoteOne("castR (((1/sqrt(2)).(|0>+|1>)) * |0>)"),
                      vec({{"00", oracle::kInvSqrt2}, {"10", oracle::kInvSqrt2}})));
    EXPECT_TRUE(close(denoteOne("2.((1/2).|0>+|1>) - 2.|1>"), vec({{"0", 1.0}})));
    EXPECT_TRUE(close(denoteOne("head |10>"), semBit(1)));
}

TEST(Denotation, HadamardTable) {
    TermPtr h = parseTerm("\\x:B. (if? |-> |+>) x");
    EXPECT_TRUE(typeEq(typeOf(h), tArrow(tBit(), tSpan(tBit()))));
    SemPtr f = only(denote(h));
    ASSERT_EQ(f->kind, SemKind::Fun);
    EXPECT_TRUE(inDomain(f, tArrow(tBit(), tSpan(tBit()))));
    EXPECT_TRUE(close(only(applyFun(f, semBit(0))), vec({{"0", oracle::kInvSqrt2}, {"1", oracle::kInvSqrt2}})));
    EXPECT_TRUE(close(only(applyFun(f, semBit(1))), vec({{"0", oracle::kInvSqrt2}, {"1", -oracle::kInvSqrt2}})));
}

TEST(Denotation, Measurement) {
    SemDist d = denote(parseTerm("meas 2 (|000>+2.|110>+3.|001>+|111>)"));
    ASSERT_EQ(d.size(), 2u);
    for (const auto& [p, v] : d.entries()) {
        ASSERT_EQ(v->kind, SemKind::Pair);
        ASSERT_EQ(v->right->kind, SemKind::Pair);
        const std::string prefix = std::to_string(v->left->bit) + std::to_string(v->right->left->bit);
        SemPtr rest = v->right->right;
        if (prefix == "00") {
            EXPECT_NEAR(p, oracle::kMeasP00, 1e-9);
            EXPECT_TRUE(close(rest, vec({{"0", oracle::kInvSqrt10}, {"1", oracle::kThreeInvSqrt10}})));
        } else {
            EXPECT_EQ(prefix, "11");
            EXPECT_NEAR(p, oracle::kMeasP11, 1e-9);
            EXPECT_TRUE(close(rest, vec({{"0", oracle::kTwoInvSqrt5}, {"1", oracle::kInvSqrt5}})));
        }
    }
}

TEST(Denotation, MeasurementPrimitives) {
    SemPtr v = vec({{"00", 1.0}, {"11", C{0, 1}}});
    EXPECT_TRUE(close(semNorm(v, 2), vec({{"00", oracle::kInvSqrt2}, {"11", C{0, oracle::kInvSqrt2}}})));
    EXPECT_TRUE(close(semProjectorPk(1, 1, v, 2), vec({{"11", C{0, 1}}})));
    SemDist d = semMeasure(1, v, 2);
    ASSERT_EQ(d.size(), 2u);
    for (const auto& [p, w] : d.entries()) EXPECT_NEAR(p, 0.5, 1e-12);
}

TEST(Denotation, EnvironmentMustMatchDomain) {
    Context ctx{{"x", tBit()}};
    DerivPtr d = checkType(ctx, parseTerm("x", ParseOptions{true, nullptr}), tBit());
    EXPECT_TRUE(close(only(evalDerivation(d, {{"x", semBit(1)}})), semBit(1)));
    EXPECT_THROW(evalDerivation(d, {{"x", vec({{"0", 1.0}})}}), DomainMismatch);
}

TEST(SemEq, FunctionsCompareExtensionally) {
    TermPtr f = parseTerm("\\x:B. x");
    TermPtr g = parseTerm("if? |1> |0>");
    TermPtr n = parseTerm("if? |0> |1>");
    const TypePtr a = tArrow(tBit(), tBit());
    EXPECT_TRUE(semEq(denoteAt(f, a), denoteAt(g, a), a));
    EXPECT_FALSE(semEq(denoteAt(f, a), denoteAt(n, a), a));
}

TEST(SemEq, ToleranceIsRespected) {
    const TypePtr a = tSpan(tBit());
    SemPtr x = vec({{"0", 1.0}}), y = vec({{"0", 1.0 + 1e-8}});
    EXPECT_TRUE(semEq(x, y, a, 1e-6));
    EXPECT_FALSE(semEq(x, y, a, 1e-10));
}

TEST(Json, ValuesHaveTaggedKinds) {
    nlohmann::json j = semToJson(vec({{"1", C{0.5, -1}}}));
    EXPECT_EQ(j["kind"], "vec");
    ASSERT_EQ(j["terms"].size(), 1u);
    EXPECT_EQ(j["terms"][0]["key"]["kind"], "basis");
    EXPECT_EQ(j["terms"][0]["key"]["bit"], 1);
    EXPECT_DOUBLE_EQ(j["terms"][0]["re"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(j["terms"][0]["im"].get<double>(), -1.0);
    nlohmann::json d = semDistToJson(denote(parseTerm("meas 1 ((1/sqrt(2)).(|0>+|1>))")));
    EXPECT_EQ(d["branches"].size(), 2u);
}

// Reduction preserves the denotation on every closed example used above.
TEST(Soundness, WorkedExamplesKeepTheirDenotation) {
    for (const char* src : {"(\\x:B. x*x) ((1/sqrt(2)).(|0>+|1>))", "(if? |0> |1>) ((0.6).|1> + (0.8).|0>)",
                            "castR (((1/sqrt(2)).(|0>+|1>)) * |0>)", "2.((1/2).|0>+|1>) - 2.|1>",
                            "meas 2 (|000>+2.|110>+3.|001>+|111>)", "meas 1 zero(B*B)"}) {
        TermPtr t = parseTerm(src);
        TypePtr a = typeOf(t);
        EXPECT_TRUE(semEq(denoteAt(t, a), denoteDist(normalize(t), a), a, 1e-9)) << src;
    }
}

// Known gap: at doubly nested span types the interpretation of + and of
// lin_l disagrees with the rewrite rules. The generator therefore keeps one
// level of S by default. These two minimal instances pin the finding down; if
// either starts agreeing, the semantics changed and the README must follow.
TEST(Soundness, NestedSpanCounterexamples) {
    {
        TermPtr t = parseTerm("zero(S(B)) + |0>");
        TypePtr a = typeOf(t);
        ASSERT_TRUE(typeEq(a, tSpan(tSpan(tBit()))));
        StepResult r = step(t, a);
        ASSERT_FALSE(r.normal);
        EXPECT_EQ(r.redex.rule, "neut");
        EXPECT_FALSE(semEq(denoteAt(t, a), denoteDist(r.redex.result, a), a, 1e-6));
    }
    {
        TermPtr t = parseTerm("((\\x:B. |0>) + (\\x:B. |+>)) |1>");
        TypePtr a = typeOf(t);
        ASSERT_TRUE(typeEq(a, tSpan(tSpan(tBit()))));
        StepResult r = step(t, a);
        ASSERT_FALSE(r.normal);
        EXPECT_EQ(r.redex.rule, "lin_l");
        EXPECT_FALSE(semEq(denoteAt(t, a), denoteDist(r.redex.result, a), a, 1e-6));
    }
    {
        // Hadamard twice: the rewriter returns |1>, the model keeps a formal
        // combination of the two intermediate states.
        TermPtr t = parseTerm("(\\x:B. (if? |-> |+>) x) ((\\x:B. (if? |-> |+>) x) |1>)");
        TypePtr a = typeOf(t);
        ASSERT_TRUE(typeEq(a, tSpan(tSpan(tBit()))));
        Dist<TermPtr> n = normalize(t, 100000, nullptr, a);
        EXPECT_TRUE(termEq(n.only(), mkKet1()));
        EXPECT_FALSE(semEq(denoteAt(t, a), denoteDist(n, a), a, 1e-6));
    }
}

// Same finding at corpus scale: allowing S(S(..)) types makes the soundness
// suite fail, while the default corpus passes.
TEST(Soundness, NestingTwoCorpusExposesTheGap) {
    SuiteOptions o;
    o.gen.maxSpanNesting = 2;
    SuiteReport nested = runPropertySuite("soundness", 300, 17, o);
    EXPECT_GT(nested.failures.size(), 0u);
    SuiteReport flat = runPropertySuite("soundness", 300, 17, SuiteOptions{});
    EXPECT_TRUE(flat.ok()) << reportText(flat);
}
