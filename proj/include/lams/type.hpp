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


#pragma once

#include <memory>
#include <string>
#include <vector>

namespace lams {

// Types of the calculus. B^n is a right-nested product of Bit; B^0 is Unit
// and only arises as the suffix type of a full measurement. Span is never
// collapsed: S(S(A)) and S(A) are distinct.
enum class TypeKind { Bit, Unit, Prod, Arrow, Span };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
    TypeKind kind;
    TypePtr left;   // Prod left, Arrow param, Span inner
    TypePtr right;  // Prod right, Arrow result
};

TypePtr tBit();
TypePtr tUnit();
// Products are right-nested: tProd(tProd(a, b), c) == tProd(a, tProd(b, c)).
TypePtr tProd(TypePtr a, TypePtr b);
TypePtr tArrow(TypePtr param, TypePtr result);
TypePtr tSpan(TypePtr inner);
TypePtr tSpanN(int k, TypePtr inner);
// B^n for n >= 0.
TypePtr tBn(int n);
TypePtr tProdList(const std::vector<TypePtr>& items);

int compareType(const TypePtr& a, const TypePtr& b);
inline bool typeEq(const TypePtr& a, const TypePtr& b) { return compareType(a, b) == 0; }

std::string printType(const TypePtr& t);

// Elements of a right-nested product; a non-product is a one-element list.
std::vector<TypePtr> productList(const TypePtr& t);

// Number of leading S constructors and the type beneath them.
int outerS(const TypePtr& t);
TypePtr stripS(const TypePtr& t);
TypePtr stripS(const TypePtr& t, int k);

bool isQubit(const TypePtr& t);
// B^n with n >= 0; returns n through `n` when non-null.
bool isBasisData(const TypePtr& t, int* n = nullptr);
// Non-superposed types: B^n or any arrow.
bool isBType(const TypePtr& t);

enum class TypeClass { Basis, Qubit, General };
// Basis takes precedence: B^n is both Basis and Qubit, reported as Basis.
TypeClass classify(const TypePtr& t);
inline bool classIsBasis(const TypePtr& t) { return isBType(t); }
inline bool classIsQubit(const TypePtr& t) { return isQubit(t); }

}  // namespace lams
