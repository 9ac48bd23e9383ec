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

#include "lams/dist.hpp"
#include "lams/parser.hpp"
#include "lams/printer.hpp"
#include "lams/term.hpp"
#include "lams/type.hpp"

using namespace lams;

TEST(Type, ProductsNestToTheRight) {
    TypePtr left = tProd(tProd(tBit(), tBit()), tBit());
    TypePtr right = tProd(tBit(), tProd(tBit(), tBit()));
    EXPECT_TRUE(typeEq(left, right));
    EXPECT_TRUE(typeEq(left, tBn(3)));
    EXPECT_EQ(productList(tProd(tSpan(tBit()), tBn(2))).size(), 3u);
}

TEST(Type, SpanIsNotIdempotent) {
    EXPECT_FALSE(typeEq(tSpan(tBit()), tSpan(tSpan(tBit()))));
    EXPECT_EQ(outerS(tSpanN(3, tBit())), 3);
    EXPECT_TRUE(typeEq(stripS(tSpanN(3, tBit()), 2), tSpan(tBit())));
}

TEST(Type, Printing) {
    EXPECT_EQ(printType(tBn(2)), "B^2");
    EXPECT_EQ(printType(tSpan(tBn(2))), "S(B^2)");
    EXPECT_EQ(printType(tProd(tBn(2), tSpan(tBit()))), "B^2 * S(B)");
    EXPECT_EQ(printType(tArrow(tBit(), tSpan(tBit()))), "B => S(B)");
}

TEST(Type, Classification) {
    int n = -1;
    EXPECT_TRUE(isBasisData(tBn(3), &n));
    EXPECT_EQ(n, 3);
    EXPECT_TRUE(isBasisData(tUnit(), &n));
    EXPECT_EQ(n, 0);
    EXPECT_EQ(classify(tBn(2)), TypeClass::Basis);
    EXPECT_EQ(classify(tProd(tSpan(tBit()), tBit())), TypeClass::Qubit);
    EXPECT_EQ(classify(tSpan(tArrow(tBit(), tBit()))), TypeClass::General);
    EXPECT_TRUE(isBType(tArrow(tSpan(tBit()), tBit())));
    EXPECT_TRUE(isQubit(tSpan(tSpan(tBit()))));
    EXPECT_FALSE(isQubit(tArrow(tBit(), tBit())));
}

TEST(Term, SumsAreCanonicalUnderCommutationAndAssociation) {
    TermPtr a = mkSum(mkKet0(), mkSum(mkKet1(), mkScale(2, mkKet0())));
    TermPtr b = mkSum(mkSum(mkScale(2, mkKet0()), mkKet0()), mkKet1());
    EXPECT_TRUE(termIdentical(a, b));
    EXPECT_EQ(a->kids.size(), 3u);
}

TEST(Term, EqualityToleratesScalarNoise) {
    TermPtr a = mkScale(Scalar{M_SQRT1_2, 0}, mkKet0());
    TermPtr b = mkScale(Scalar{M_SQRT1_2 + 1e-11, 0}, mkKet0());
    TermPtr c = mkScale(Scalar{M_SQRT1_2 + 1e-6, 0}, mkKet0());
    EXPECT_TRUE(termEq(a, b));
    EXPECT_FALSE(termEq(a, c));
}

TEST(Term, AlphaEquivalentLambdasAreEqual) {
    TermPtr f = mkLam("x", tBit(), mkVar("x"));
    TermPtr g = mkLam("y", tBit(), mkVar("y"));
    EXPECT_TRUE(termEq(f, g));
    EXPECT_FALSE(termEq(f, mkLam("y", tBit(), mkKet0())));
}

TEST(Term, SubstitutionAvoidsCapture) {
    // (\y:B. x * y)[x := y] must not bind the inserted y.
    TermPtr body = mkLam("y", tBit(), mkProd(mkVar("x"), mkVar("y")));
    TermPtr r = substitute(body, "x", mkVar("y"));
    EXPECT_EQ(freeVars(r), std::set<std::string>{"y"});
    EXPECT_TRUE(termEq(r, mkLam("z", tBit(), mkProd(mkVar("y"), mkVar("z")))));
}

TEST(Term, ValuesAndBasisTerms) {
    EXPECT_TRUE(isBasisTerm(mkKets("0110")));
    EXPECT_TRUE(isBasisTerm(mkLam("x", tSpan(tBit()), mkVar("x"))));
    EXPECT_TRUE(isBasisTerm(mkIfTe(mkKet0(), mkKet1())));
    EXPECT_FALSE(isBasisTerm(mkKetPlus()));
    EXPECT_TRUE(isValue(mkKetPlus()));
    EXPECT_TRUE(isValue(mkZero(tBit())));
    EXPECT_FALSE(isValue(mkApp(mkLam("x", tBit(), mkVar("x")), mkKet0())));
    EXPECT_FALSE(isValue(mkHead(mkKets("01"))));
}

TEST(Term, KetsAndLists) {
    TermPtr k = mkKets("101");
    auto items = termList(k);
    ASSERT_EQ(items.size(), 3u);
    EXPECT_EQ(items[0]->tag, Tag::Ket1);
    EXPECT_EQ(items[1]->tag, Tag::Ket0);
    EXPECT_EQ(items[2]->tag, Tag::Ket1);
    EXPECT_EQ(termSize(k), 5);
    EXPECT_TRUE(termIdentical(mkProdList(items), k));
}

TEST(Dist, NormalizeMergesEqualPayloads) {
    auto d = Dist<TermPtr>::normalize({{0.25, mkKet0()}, {0.25, mkKet1()}, {0.5, mkKet0()}});
    ASSERT_EQ(d.size(), 2u);
    EXPECT_DOUBLE_EQ(d.entries()[0].first + d.entries()[1].first, 1.0);
    for (const auto& [p, t] : d.entries()) EXPECT_DOUBLE_EQ(p, t->tag == Tag::Ket0 ? 0.75 : 0.25);
}

TEST(Dist, RejectsMassNotOne) {
    EXPECT_THROW(Dist<TermPtr>::normalize({{0.5, mkKet0()}}), SumNotOne);
    auto d = Dist<TermPtr>::renormalize({{0.5, mkKet0()}, {1.5, mkKet1()}});
    EXPECT_NEAR(d.entries().back().first + d.entries().front().first, 1.0, 1e-15);
}

TEST(Dist, BindMultipliesProbabilities) {
    auto coin = Dist<TermPtr>::normalize({{0.5, mkKet0()}, {0.5, mkKet1()}});
    auto twice = coin.bind<TermPtr>([&](const TermPtr& x) {
        return coin.map<TermPtr>([&](const TermPtr& y) { return mkProd(x, y); });
    });
    ASSERT_EQ(twice.size(), 4u);
    for (const auto& [p, t] : twice.entries()) EXPECT_DOUBLE_EQ(p, 0.25);
}

TEST(Dist, EqualityIsUpToTolerance) {
    auto a = Dist<TermPtr>::normalize({{1.0 / 3, mkKet0()}, {2.0 / 3, mkKet1()}});
    auto b = Dist<TermPtr>::normalize({{1.0 / 3 + 1e-12, mkKet0()}, {2.0 / 3 - 1e-12, mkKet1()}});
    auto c = Dist<TermPtr>::normalize({{0.5, mkKet0()}, {0.5, mkKet1()}});
    auto same = [](const TermPtr& x, const TermPtr& y) { return termEq(x, y); };
    EXPECT_TRUE(distEq<TermPtr>(a, b, 1e-9, same));
    EXPECT_FALSE(distEq<TermPtr>(a, c, 1e-9, same));
}
