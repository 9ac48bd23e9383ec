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


#include "lams/printer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lams {

namespace {

// Set for the duration of one public call; the recursive printers read it.
thread_local PrintStyle gStyle;

struct StyleScope {
    PrintStyle saved;
    explicit StyleScope(const PrintStyle& s) : saved(gStyle) { gStyle = s; }
    ~StyleScope() { gStyle = saved; }
};

std::string fmtReal(double x) {
    const double snap = gStyle.decimals >= 17 ? 0.0 : 1e-12;
    if (std::abs(x - std::round(x)) <= snap && std::abs(x) < 1e15) {
        long long n = std::llround(x);
        return std::to_string(n);
    }
    char buf[64];
    // Fixed notation loses relative precision on small magnitudes, so the
    // bit-exact style switches to shortest-round-trip significant digits.
    if (gStyle.decimals >= 17)
        std::snprintf(buf, sizeof buf, "%.17g", x);
    else
        std::snprintf(buf, sizeof buf, "%.*f", gStyle.decimals, x);
    std::string s = buf;
    if (s.find_first_of("eE") != std::string::npos || gStyle.decimals >= 17) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

std::string pSum(const TermPtr& t);
std::string pPterm(const TermPtr& t);
std::string pAtom(const TermPtr& t);

bool isKet(const TermPtr& t) { return t->tag == Tag::Ket0 || t->tag == Tag::Ket1; }

std::string pProduct(const TermPtr& t) {
    if (t->tag != Tag::Prod) return pAtom(t);
    auto items = termList(t);
    std::string out;
    for (size_t i = 0; i < items.size();) {
        if (!out.empty()) out += " * ";
        if (isKet(items[i])) {
            std::string bits;
            while (i < items.size() && isKet(items[i])) bits += items[i++]->tag == Tag::Ket1 ? '1' : '0';
            out += "|" + bits + ">";
        } else {
            out += pAtom(items[i++]);
        }
    }
    return out;
}

std::string pApp(const TermPtr& t) {
    if (t->tag != Tag::App) return pProduct(t);
    const TermPtr& f = t->kids[0];
    std::string fs = f->tag == Tag::App ? pApp(f) : pAtom(f);
    return fs + " " + pAtom(t->kids[1]);
}

std::string pPterm(const TermPtr& t) {
    switch (t->tag) {
        case Tag::Scale: {
            const TermPtr& b = t->kids[0];
            // A nested scale would lex as a decimal literal (`2.3.x`).
            std::string body = b->tag == Tag::Scale ? "(" + pPterm(b) + ")" : pPterm(b);
            return printScalar(t->scalar, gStyle) + "." + body;
        }
        case Tag::CastR: return "castR " + pPterm(t->kids[0]);
        case Tag::CastL: return "castL " + pPterm(t->kids[0]);
        case Tag::Head: return "head " + pPterm(t->kids[0]);
        case Tag::Tail: return "tail " + pPterm(t->kids[0]);
        case Tag::Meas: return "meas " + std::to_string(t->j) + " " + pPterm(t->kids[0]);
        case Tag::Sum: return "(" + pSum(t) + ")";
        case Tag::Lam: return pAtom(t);
        default: return pApp(t);
    }
}

bool sharedScalar(const TermPtr& sum) {
    if (sum->kids.size() < 2) return false;
    for (const auto& k : sum->kids)
        if (k->tag != Tag::Scale || std::abs(k->scalar - sum->kids[0]->scalar) > 1e-12) return false;
    return true;
}

std::string pSum(const TermPtr& t) {
    if (t->tag != Tag::Sum) return pPterm(t);
    if (gStyle.factor && sharedScalar(t)) {
        std::string inner;
        for (const auto& k : t->kids) inner += (inner.empty() ? "" : " + ") + pPterm(k->kids[0]);
        return printScalar(t->kids[0]->scalar, gStyle) + ".(" + inner + ")";
    }
    std::string out;
    for (const auto& k : t->kids) {
        if (!out.empty()) out += " + ";
        out += pPterm(k);
    }
    return out;
}

std::string pAtom(const TermPtr& t) {
    switch (t->tag) {
        case Tag::Var: return t->name;
        case Tag::Ket0: return "|0>";
        case Tag::Ket1: return "|1>";
        case Tag::Unit: return "()";
        case Tag::Zero: return "zero(" + printType(t->annot) + ")";
        case Tag::IfTe: return "(if? " + pAtom(t->kids[0]) + " " + pAtom(t->kids[1]) + ")";
        case Tag::Lam:
            return "(\\" + t->name + ":" + printType(t->annot) + ". " + pSum(t->kids[0]) + ")";
        case Tag::Prod: {
            auto items = termList(t);
            if (std::all_of(items.begin(), items.end(), isKet)) return pProduct(t);
            return "(" + pProduct(t) + ")";
        }
        default:
            return "(" + pSum(t) + ")";
    }
}

}  // namespace

std::string printScalar(Scalar s, const PrintStyle& style) {
    StyleScope scope(style);
    double re = s.real(), im = s.imag();
    if (im == 0) {
        if (std::abs(re - std::round(re)) < 1e-12 && re >= 0 && std::abs(re) < 1e15) return fmtReal(re);
        return "(" + fmtReal(re) + ")";
    }
    std::string imPart = fmtReal(std::abs(im)) + "i";
    if (re == 0) return "(" + std::string(im < 0 ? "-" : "") + imPart + ")";
    return "(" + fmtReal(re) + (im < 0 ? "-" : "+") + imPart + ")";
}

std::string printTerm(const TermPtr& t, const PrintStyle& style) {
    StyleScope scope(style);
    if (t->tag == Tag::Lam) return "\\" + t->name + ":" + printType(t->annot) + ". " + pSum(t->kids[0]);
    return pSum(t);
}

std::string printProbability(double p) {
    for (int d = 1; d <= 64; ++d) {
        double n = std::round(p * d);
        if (std::abs(p - n / d) <= 1e-12) {
            if (d == 1) return fmtReal(n);
            return std::to_string(static_cast<long long>(n)) + "/" + std::to_string(d);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", p);
    return buf;
}

std::string printDist(const Dist<TermPtr>& d, const PrintStyle& style) {
    if (d.isPoint()) return printTerm(d.only(), style);
    auto entries = d.entries();
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return compareTerm(a.second, b.second) < 0;
    });
    std::string out = "[ ";
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) out += " || ";
        out += printProbability(entries[i].first) + ": " + printTerm(entries[i].second, style);
    }
    return out + " ]";
}

}  // namespace lams
