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


#include "lams/type.hpp"

#include <cassert>

namespace lams {

TypePtr tBit() {
    static const TypePtr bit = std::make_shared<Type>(Type{TypeKind::Bit, nullptr, nullptr});
    return bit;
}

TypePtr tUnit() {
    static const TypePtr unit = std::make_shared<Type>(Type{TypeKind::Unit, nullptr, nullptr});
    return unit;
}

TypePtr tProd(TypePtr a, TypePtr b) {
    if (a->kind == TypeKind::Prod) return tProd(a->left, tProd(a->right, std::move(b)));
    return std::make_shared<Type>(Type{TypeKind::Prod, std::move(a), std::move(b)});
}

TypePtr tArrow(TypePtr param, TypePtr result) {
    return std::make_shared<Type>(Type{TypeKind::Arrow, std::move(param), std::move(result)});
}

TypePtr tSpan(TypePtr inner) {
    return std::make_shared<Type>(Type{TypeKind::Span, std::move(inner), nullptr});
}

TypePtr tSpanN(int k, TypePtr inner) {
    for (int i = 0; i < k; ++i) inner = tSpan(inner);
    return inner;
}

TypePtr tBn(int n) {
    if (n <= 0) return tUnit();
    TypePtr t = tBit();
    for (int i = 1; i < n; ++i) t = tProd(tBit(), t);
    return t;
}

TypePtr tProdList(const std::vector<TypePtr>& items) {
    assert(!items.empty());
    TypePtr t = items.back();
    for (size_t i = items.size() - 1; i-- > 0;) t = tProd(items[i], t);
    return t;
}

int compareType(const TypePtr& a, const TypePtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
    switch (a->kind) {
        case TypeKind::Bit:
        case TypeKind::Unit:
            return 0;
        case TypeKind::Span:
            return compareType(a->left, b->left);
        case TypeKind::Prod:
        case TypeKind::Arrow:
            if (int c = compareType(a->left, b->left)) return c;
            return compareType(a->right, b->right);
    }
    return 0;
}

std::vector<TypePtr> productList(const TypePtr& t) {
    std::vector<TypePtr> out;
    TypePtr cur = t;
    while (cur->kind == TypeKind::Prod) {
        out.push_back(cur->left);
        cur = cur->right;
    }
    out.push_back(cur);
    return out;
}

namespace {

std::string printElem(const TypePtr& t);

std::string printTop(const TypePtr& t) {
    switch (t->kind) {
        case TypeKind::Arrow:
            return printElem(t->left) + " => " + printTop(t->right);
        case TypeKind::Prod: {
            auto items = productList(t);
            std::string out;
            for (size_t i = 0; i < items.size();) {
                if (!out.empty()) out += " * ";
                size_t run = 0;
                while (i + run < items.size() && items[i + run]->kind == TypeKind::Bit) ++run;
                if (run > 1) {
                    out += "B^" + std::to_string(run);
                    i += run;
                } else {
                    out += printElem(items[i]);
                    ++i;
                }
            }
            return out;
        }
        default:
            return printElem(t);
    }
}

std::string printElem(const TypePtr& t) {
    switch (t->kind) {
        case TypeKind::Bit:
            return "B";
        case TypeKind::Unit:
            return "B^0";
        case TypeKind::Span:
            return "S(" + printTop(t->left) + ")";
        case TypeKind::Prod:
        case TypeKind::Arrow:
            return "(" + printTop(t) + ")";
    }
    return "?";
}

}  // namespace

std::string printType(const TypePtr& t) { return printTop(t); }

int outerS(const TypePtr& t) {
    int k = 0;
    for (const Type* cur = t.get(); cur->kind == TypeKind::Span; cur = cur->left.get()) ++k;
    return k;
}

TypePtr stripS(const TypePtr& t) {
    TypePtr cur = t;
    while (cur->kind == TypeKind::Span) cur = cur->left;
    return cur;
}

TypePtr stripS(const TypePtr& t, int k) {
    TypePtr cur = t;
    for (int i = 0; i < k; ++i) {
        assert(cur->kind == TypeKind::Span);
        cur = cur->left;
    }
    return cur;
}

bool isQubit(const TypePtr& t) {
    switch (t->kind) {
        case TypeKind::Bit:
        case TypeKind::Unit:
            return true;
        case TypeKind::Span:
            return isQubit(t->left);
        case TypeKind::Prod:
            return isQubit(t->left) && isQubit(t->right);
        case TypeKind::Arrow:
            return false;
    }
    return false;
}

bool isBasisData(const TypePtr& t, int* n) {
    if (t->kind == TypeKind::Unit) {
        if (n) *n = 0;
        return true;
    }
    int count = 0;
    for (const auto& item : productList(t)) {
        if (item->kind != TypeKind::Bit) return false;
        ++count;
    }
    if (n) *n = count;
    return true;
}

bool isBType(const TypePtr& t) { return t->kind == TypeKind::Arrow || isBasisData(t); }

TypeClass classify(const TypePtr& t) {
    if (isBType(t)) return TypeClass::Basis;
    if (isQubit(t)) return TypeClass::Qubit;
    return TypeClass::General;
}

}  // namespace lams
