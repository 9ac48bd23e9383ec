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


#include "lams/parser.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include "lams/error.hpp"

namespace lams {

namespace {

enum class Tok { Ident, Number, Ket, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        int l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                      src[j] == '\''))
                ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            auto digit = [&](size_t k) { return k < src.size() && std::isdigit(static_cast<unsigned char>(src[k])); };
            while (digit(j)) ++j;
            // `2.|0>` is an integer followed by the scale dot.
            if (j < src.size() && src[j] == '.' && digit(j + 1)) {
                ++j;
                while (digit(j)) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (digit(k)) {
                    j = k;
                    while (digit(j)) ++j;
                }
            }
            out.push_back({Tok::Number, src.substr(i, j - i), l, cl});
            advance(j - i);
            continue;
        }
        if (c == '|') {
            size_t j = i + 1;
            while (j < src.size() && (src[j] == '0' || src[j] == '1' || src[j] == '+' || src[j] == '-')) ++j;
            if (j > i + 1 && j < src.size() && src[j] == '>') {
                out.push_back({Tok::Ket, src.substr(i + 1, j - i - 1), l, cl});
                advance(j + 1 - i);
                continue;
            }
            throw SyntaxError("malformed ket", l, cl);
        }
        if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Tok::Sym, "=>", l, cl});
            advance(2);
            continue;
        }
        static const std::string syms = "().+-*/\\:^;=?,";
        if (syms.find(c) != std::string::npos) {
            out.push_back({Tok::Sym, std::string(1, c), l, cl});
            advance(1);
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const std::set<std::string> kKeywords = {"if", "then", "else", "zero", "head", "tail", "meas",
                                         "castR", "castL", "sqrt", "def", "main"};

class Parser {
public:
    Parser(std::vector<Token> toks, ParseOptions opts) : toks_(std::move(toks)), opts_(opts) {}

    bool atEnd() const { return peek().kind == Tok::End; }
    const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

    bool isSym(const std::string& s, size_t k = 0) const {
        return peek(k).kind == Tok::Sym && peek(k).text == s;
    }
    bool isIdent(const std::string& s, size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw SyntaxError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line,
                          t.col);
    }

    void expectSym(const std::string& s) {
        if (!isSym(s)) fail("expected '" + s + "'");
        ++pos_;
    }
    void expectIdent(const std::string& s) {
        if (!isIdent(s)) fail("expected '" + s + "'");
        ++pos_;
    }

    // ---- types ----
    TypePtr type() {
        const Token& start = peek();
        TypePtr lhs = prodType();
        if (isSym("=>")) {
            ++pos_;
            if (!isQubit(lhs))
                throw NonQubitParam(std::to_string(start.line) + ":" + std::to_string(start.col) +
                                    ": arrow parameter " + printType(lhs) + " is not a qubit type");
            return tArrow(lhs, type());
        }
        return lhs;
    }

    TypePtr prodType() {
        std::vector<TypePtr> items{atomType()};
        while (isSym("*")) {
            ++pos_;
            items.push_back(atomType());
        }
        return tProdList(items);
    }

    TypePtr atomType() {
        if (isIdent("B")) {
            ++pos_;
            if (isSym("^")) {
                ++pos_;
                if (peek().kind != Tok::Number) fail("expected exponent");
                int n = std::stoi(peek().text);
                ++pos_;
                return tBn(n);
            }
            return tBit();
        }
        if (isIdent("S")) {
            ++pos_;
            expectSym("(");
            TypePtr inner = type();
            expectSym(")");
            return tSpan(inner);
        }
        if (isSym("(")) {
            ++pos_;
            TypePtr t = type();
            expectSym(")");
            return t;
        }
        fail("expected a type");
    }

    // ---- scalars ----
    Scalar scalarExpr() {
        Scalar v = scalarTerm();
        while (isSym("+") || isSym("-")) {
            bool minus = isSym("-");
            ++pos_;
            Scalar r = scalarTerm();
            v = minus ? v - r : v + r;
        }
        return v;
    }

    Scalar scalarTerm() {
        Scalar v = scalarFactor();
        while (isSym("*") || isSym("/")) {
            bool div = isSym("/");
            ++pos_;
            Scalar r = scalarFactor();
            if (div && r == Scalar(0)) fail("division by zero");
            v = div ? v / r : v * r;
        }
        return v;
    }

    Scalar scalarFactor() {
        if (isSym("-")) {
            ++pos_;
            return -scalarFactor();
        }
        if (peek().kind == Tok::Number) {
            double x = std::stod(peek().text);
            ++pos_;
            if (isIdent("i")) {
                ++pos_;
                return {0, x};
            }
            return {x, 0};
        }
        if (isIdent("i")) {
            ++pos_;
            return {0, 1};
        }
        if (isIdent("sqrt")) {
            ++pos_;
            expectSym("(");
            Scalar x = scalarExpr();
            expectSym(")");
            return std::sqrt(x);
        }
        if (isSym("(")) {
            ++pos_;
            Scalar x = scalarExpr();
            expectSym(")");
            return x;
        }
        fail("expected a scalar");
    }

    // A scalar immediately followed by `.`; restores the position otherwise.
    std::optional<Scalar> tryScalarPrefix() {
        const Token& t = peek();
        bool plausible = t.kind == Tok::Number || isIdent("i") || isIdent("sqrt") || isSym("(") || isSym("-");
        if (!plausible) return std::nullopt;
        size_t saved = pos_;
        try {
            Scalar s = scalarExpr();
            if (isSym(".")) {
                ++pos_;
                if (!isFiniteScalar(s)) fail("non-finite scalar");
                return s;
            }
        } catch (const SyntaxError&) {
        }
        pos_ = saved;
        return std::nullopt;
    }

    // ---- terms ----
    TermPtr sum() {
        std::vector<TermPtr> parts{pterm()};
        while (isSym("+") || isSym("-")) {
            bool minus = isSym("-");
            ++pos_;
            TermPtr r = pterm();
            if (minus) r = r->tag == Tag::Scale ? mkScale(-r->scalar, r->kids[0]) : mkScale(-1.0, r);
            parts.push_back(r);
        }
        return mkSum(std::move(parts));
    }

    bool startsPrefixOp() const {
        return isIdent("castR") || isIdent("castL") || isIdent("head") || isIdent("tail") || isIdent("meas");
    }

    TermPtr pterm() {
        if (auto s = tryScalarPrefix()) return mkScale(*s, pterm());
        if (isIdent("castR")) return ++pos_, mkCastR(pterm());
        if (isIdent("castL")) return ++pos_, mkCastL(pterm());
        if (isIdent("head")) return ++pos_, mkHead(pterm());
        if (isIdent("tail")) return ++pos_, mkTail(pterm());
        if (isIdent("meas")) {
            ++pos_;
            if (peek().kind != Tok::Number || peek().text.find_first_not_of("0123456789") != std::string::npos)
                fail("expected measured qubit count");
            int j = std::stoi(peek().text);
            if (j < 1) fail("measured qubit count must be positive");
            ++pos_;
            return mkMeas(j, pterm());
        }
        if (isSym("-")) {
            ++pos_;
            return mkScale(-1.0, pterm());
        }
        return product();
    }

    TermPtr product() {
        std::vector<TermPtr> items{app()};
        while (isSym("*")) {
            ++pos_;
            // A prefix operator in the last position extends to the right.
            bool prefix = startsPrefixOp() || isSym("-");
            if (!prefix) {
                size_t saved = pos_;
                prefix = tryScalarPrefix().has_value();
                pos_ = saved;
            }
            if (prefix) {
                items.push_back(pterm());
                break;
            }
            items.push_back(app());
        }
        return mkProdList(items);
    }

    bool startsAtom() const {
        const Token& t = peek();
        if (t.kind == Tok::Ket) return true;
        if (t.kind == Tok::Sym) return t.text == "(" || t.text == "\\";
        if (t.kind == Tok::Ident) {
            if (t.text == "zero" || t.text == "if") return true;
            return !kKeywords.count(t.text);
        }
        return false;
    }

    TermPtr app() {
        TermPtr f = atom();
        while (startsAtom()) f = mkApp(f, atom());
        return f;
    }

    TermPtr atom() {
        const Token& t = peek();
        if (t.kind == Tok::Ket) {
            ++pos_;
            if (t.text == "+") return mkKetPlus();
            if (t.text == "-") return mkKetMinus();
            if (t.text.find_first_of("+-") != std::string::npos)
                throw SyntaxError("mixed ket string", t.line, t.col);
            return mkKets(t.text);
        }
        if (isSym("(")) {
            ++pos_;
            if (isSym(")")) {
                ++pos_;
                return mkUnit();
            }
            TermPtr inner = sum();
            expectSym(")");
            return inner;
        }
        if (isSym("\\")) {
            ++pos_;
            if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail("expected binder name");
            std::string name = peek().text;
            ++pos_;
            expectSym(":");
            const Token& at = peek();
            TypePtr annot = type();
            if (!isQubit(annot))
                throw NonQubitParam(std::to_string(at.line) + ":" + std::to_string(at.col) + ": parameter type " +
                                    printType(annot) + " is not a qubit type");
            expectSym(".");
            bound_.push_back(name);
            TermPtr body = sum();
            bound_.pop_back();
            return mkLam(name, annot, body);
        }
        if (isIdent("zero")) {
            ++pos_;
            expectSym("(");
            TypePtr a = type();
            expectSym(")");
            return mkZero(a);
        }
        if (isIdent("if")) {
            ++pos_;
            if (isSym("?")) {
                ++pos_;
                TermPtr r = atom();
                TermPtr s = atom();
                return mkIfTe(r, s);
            }
            TermPtr cond = sum();
            expectIdent("then");
            TermPtr r = sum();
            expectIdent("else");
            TermPtr s = sum();
            return mkApp(mkIfTe(r, s), cond);
        }
        if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
            ++pos_;
            for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
                if (*it == t.text) return mkVar(t.text);
            if (opts_.defs) {
                auto it = opts_.defs->find(t.text);
                if (it != opts_.defs->end()) return it->second;
            }
            if (opts_.allowFreeVars) return mkVar(t.text);
            throw UnknownIdentifier(t.text, t.line, t.col);
        }
        fail("expected a term");
    }

    size_t pos_ = 0;

private:
    std::vector<Token> toks_;
    ParseOptions opts_;
    std::vector<std::string> bound_;
};

}  // namespace

TermPtr parseTerm(const std::string& text, const ParseOptions& opts) {
    Parser p(lex(text), opts);
    TermPtr t = p.sum();
    if (!p.atEnd()) p.fail("unexpected trailing input");
    return t;
}

TypePtr parseType(const std::string& text) {
    Parser p(lex(text), {});
    TypePtr t = p.type();
    if (!p.atEnd()) p.fail("unexpected trailing input");
    return t;
}

Scalar parseScalar(const std::string& text) {
    Parser p(lex(text), {});
    Scalar s = p.scalarExpr();
    if (!p.atEnd()) p.fail("unexpected trailing input");
    return s;
}

SourceProgram parseProgram(const std::string& text) {
    SourceProgram prog;
    std::map<std::string, TermPtr> defs;
    ParseOptions opts;
    opts.defs = &defs;
    Parser p(lex(text), opts);
    while (!p.atEnd()) {
        if (p.isIdent("def")) {
            ++p.pos_;
            const Token& nameTok = p.peek();
            if (nameTok.kind != Tok::Ident || kKeywords.count(nameTok.text)) p.fail("expected definition name");
            std::string name = nameTok.text;
            int line = nameTok.line, col = nameTok.col;
            ++p.pos_;
            p.expectSym("=");
            TermPtr body = p.sum();
            p.expectSym(";");
            if (defs.count(name)) throw SyntaxError("duplicate definition '" + name + "'", line, col);
            defs[name] = body;
            prog.defs.emplace_back(name, body);
        } else if (p.isIdent("main")) {
            ++p.pos_;
            if (prog.main) p.fail("duplicate main");
            p.expectSym("=");
            prog.main = p.sum();
            p.expectSym(";");
        } else {
            p.fail("expected 'def' or 'main'");
        }
    }
    return prog;
}

}  // namespace lams
