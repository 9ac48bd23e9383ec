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


#include "lams/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "lams/harness.hpp"
#include "lams/parser.hpp"
#include "lams/printer.hpp"
#include "lams/rewrite.hpp"
#include "lams/semantics.hpp"
#include "lams/typecheck.hpp"

namespace lams {

namespace {

using nlohmann::json;

// Seventeen decimals make JSON terms re-parse to the same doubles.
const PrintStyle kJsonStyle{17, false};
// Human output: short decimals, common scalars factored out.
const PrintStyle kHumanStyle{8, true};

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LamsError("IOError", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<TermPtr> inputs(const CliConfig& cfg) {
    std::vector<TermPtr> out;
    for (const auto& e : cfg.terms) out.push_back(parseTerm(e));
    for (const auto& f : cfg.files) {
        SourceProgram p = parseProgram(readFile(f));
        if (!p.main) throw LamsError("NoMain", f + " defines no main term");
        out.push_back(p.main);
    }
    return out;
}

TermPtr single(const CliConfig& cfg) {
    auto ts = inputs(cfg);
    if (ts.size() != 1)
        throw LamsError("Usage", cfg.command + " takes exactly one term (-e or a .lams file), got " +
                                     std::to_string(ts.size()));
    return ts.front();
}

json distJson(const Dist<TermPtr>& d) {
    json branches = json::array();
    for (const auto& [p, t] : d.entries()) branches.push_back({{"p", p}, {"term", printTerm(t, kJsonStyle)}});
    return {{"branches", branches}};
}

void emit(const CliConfig& cfg, std::ostream& out, const std::string& text, const json& j) {
    if (cfg.format == OutputFormat::Json)
        out << j.dump(2) << "\n";
    else
        out << text << "\n";
}

int cmdCheck(const CliConfig& cfg, std::ostream& out) {
    TermPtr t = single(cfg);
    DerivPtr d = deriveMinimal({}, t);
    std::string text = printType(d->type);
    if (cfg.tree) text += "\n" + printDerivation(d);
    json j = {{"term", printTerm(t, kJsonStyle)}, {"type", printType(d->type)}};
    if (cfg.tree) j["derivation"] = printDerivation(d);
    emit(cfg, out, text, j);
    return kExitOk;
}

int cmdRun(const CliConfig& cfg, std::ostream& out) {
    TermPtr t = single(cfg);
    typeOf(t);
    long steps = 0;
    Dist<TermPtr> nf = normalize(t, cfg.fuel, &steps);
    json j = distJson(nf);
    j["steps"] = steps;
    emit(cfg, out, printDist(nf, kHumanStyle), j);
    return kExitOk;
}

int cmdTrace(const CliConfig& cfg, std::ostream& out) {
    TermPtr t = single(cfg);
    typeOf(t);
    auto steps = traceReduction(t, cfg.fuel);
    std::string text = "   " + printTerm(t);
    json arr = json::array();
    for (size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        text += "\n" + std::to_string(i + 1) + ". " + s.rule + " @ " + printPosition(s.position) + "\n   " +
                printDist(s.dist);
        json js = distJson(s.dist);
        js["rule"] = s.rule;
        js["position"] = printPosition(s.position);
        arr.push_back(js);
    }
    emit(cfg, out, text, {{"term", printTerm(t, kJsonStyle)}, {"steps", arr}});
    return kExitOk;
}

// Functions on B^n are shown by their table; 2^n rows, so n is capped.
bool tabulable(const TypePtr& a, int* n) { return a->kind == TypeKind::Arrow && isBasisData(a->left, n) && *n <= 6; }

int cmdSem(const CliConfig& cfg, std::ostream& out) {
    TermPtr t = single(cfg);
    TypePtr a = typeOf(t);
    SemDist v = denoteAt(t, a);
    json j = {{"type", printType(a)}, {"domain", printDomain(interpretType(a))}, {"denotation", semDistToJson(v)}};
    std::string text = printSemDist(v);
    int n = 0;
    if (v.isPoint() && tabulable(a, &n)) {
        text.clear();
        json table = json::array();
        for (int k = 0; k < (1 << n); ++k) {
            std::string bits;
            for (int i = n - 1; i >= 0; --i) bits.push_back((k >> i) & 1 ? '1' : '0');
            SemDist r = applyFun(v.only(), semKets(bits));
            text += (text.empty() ? "" : "\n") + ("|" + bits + "> -> ") + printSemDist(r);
            table.push_back({{"input", bits}, {"output", semDistToJson(r)}});
        }
        j["table"] = table;
    }
    emit(cfg, out, text, j);
    return kExitOk;
}

int cmdDiff(const CliConfig& cfg, std::ostream& out) {
    TermPtr t = single(cfg);
    TypePtr a = typeOf(t);
    Dist<TermPtr> nf = normalize(t, cfg.fuel, nullptr, a);
    SemDist before = denoteAt(t, a), after = denoteDist(nf, a);
    const bool same = semEq(before, after, a, cfg.tol);
    std::string text = "[[t]]     = " + printSemDist(before) + "\n[[nf(t)]] = " + printSemDist(after) + "\n" +
                       (same ? "agree" : "DIFFER");
    emit(cfg, out, text,
         {{"term", printTerm(t, kJsonStyle)},
          {"normalForm", distJson(nf)},
          {"before", semDistToJson(before)},
          {"after", semDistToJson(after)},
          {"agree", same}});
    return same ? kExitOk : kExitPropertyFailure;
}

int cmdTest(const CliConfig& cfg, std::ostream& out) {
    std::vector<std::string> names;
    if (cfg.suite == "all")
        names = suiteNames();
    else
        names = {cfg.suite};
    bool ok = true;
    std::string text;
    json arr = json::array();
    for (const auto& n : names) {
        SuiteOptions o;
        o.fuel = cfg.fuel;
        if (n == "normalization") o.maxSize = 40;
        if (cfg.tolGiven) o.tol = cfg.tol;
        SuiteReport r = runPropertySuite(n, cfg.trials, cfg.seed, o);
        ok = ok && r.ok();
        text += reportText(r);
        arr.push_back(reportJson(r));
    }
    if (!text.empty() && text.back() == '\n') text.pop_back();
    emit(cfg, out, text, {{"suites", arr}, {"ok", ok}});
    return ok ? kExitOk : kExitPropertyFailure;
}

int cmdEquiv(const CliConfig& cfg, std::ostream& out) {
    auto ts = inputs(cfg);
    if (ts.size() != 2) throw LamsError("Usage", "equiv takes exactly two terms");
    TypePtr a = typeOf(ts[0]), b = typeOf(ts[1]);
    if (!typeEq(a, b)) throw TypeMismatch("equiv needs equal types, got " + printType(a) + " and " + printType(b));
    const bool eq = opEquivCheck(ts[0], ts[1], cfg.depth, cfg.fuel);
    const std::string verdict = eq ? "no distinguishing context up to depth " + std::to_string(cfg.depth)
                                   : "distinguished by an elimination context";
    emit(cfg, out, verdict, {{"type", printType(a)}, {"depth", cfg.depth}, {"equivalent", eq}});
    return eq ? kExitOk : kExitPropertyFailure;
}

void reportError(const CliConfig& cfg, std::ostream& out, std::ostream& err, const std::string& kind,
                 const std::string& msg, const json& extra = json::object()) {
    err << "error[" << kind << "]: " << msg << "\n";
    if (cfg.format == OutputFormat::Json) {
        json j = {{"error", kind}, {"message", msg}};
        j.update(extra);
        out << j.dump(2) << "\n";
    }
}

}  // namespace

void validate(const CliConfig& cfg) {
    if (cfg.fuel <= 0) throw std::invalid_argument("--fuel must be positive");
    if (!(cfg.tol > 0)) throw std::invalid_argument("--tol must be positive");
    if (cfg.depth < 0) throw std::invalid_argument("--depth must be non-negative");
    if (cfg.trials <= 0) throw std::invalid_argument("--trials must be positive");
}

int runCommand(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (cfg.command == "check") return cmdCheck(cfg, out);
        if (cfg.command == "run") return cmdRun(cfg, out);
        if (cfg.command == "trace") return cmdTrace(cfg, out);
        if (cfg.command == "sem") return cmdSem(cfg, out);
        if (cfg.command == "diff") return cmdDiff(cfg, out);
        if (cfg.command == "test") return cmdTest(cfg, out);
        if (cfg.command == "equiv") return cmdEquiv(cfg, out);
        reportError(cfg, out, err, "Usage", "unknown command '" + cfg.command + "'");
        return kExitInputError;
    } catch (const FuelExhausted& ex) {
        reportError(cfg, out, err, ex.kind(), std::string(ex.what()) + "; partial: " + printDist(ex.partial()),
                    {{"steps", ex.steps()}, {"partial", distJson(ex.partial())}});
        return kExitFuel;
    } catch (const LamsError& ex) {
        reportError(cfg, out, err, ex.kind(), ex.what());
        return kExitInputError;
    } catch (const std::invalid_argument& ex) {
        reportError(cfg, out, err, "Usage", ex.what());
        return kExitInputError;
    }
}

int cliMain(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"lams: typechecker, rewriter and denotational evaluator for a quantum lambda calculus"};
    app.require_subcommand(1);
    CliConfig cfg;
    bool json = false;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check", "print the minimal type"},
        {"run", "normalize and print the distribution of normal forms"},
        {"trace", "print every reduction step with its rule"},
        {"sem", "print the denotation"},
        {"diff", "compare the denotations of a term and of its normal form"},
        {"test", "run property suites on generated terms"},
        {"equiv", "bounded operational equivalence of two terms"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-e,--expr", cfg.terms, "inline term (repeatable)");
        sub->add_option("files", cfg.files, ".lams source files");
        sub->add_option("--fuel", cfg.fuel, "reduction step budget")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "numeric tolerance")->capture_default_str();
        sub->add_flag("--json", json, "JSON output");
        sub->add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
        sub->add_option("--depth", cfg.depth, "context depth for equiv")->capture_default_str();
        if (name == "test") {
            sub->add_option("--trials", cfg.trials, "trials per suite")->capture_default_str();
            sub->add_option("--suite", cfg.suite, "suite name or all")
                ->check(CLI::IsMember([] {
                    auto v = suiteNames();
                    v.push_back("all");
                    return v;
                }()));
        }
        if (name == "check") sub->add_flag("--tree", cfg.tree, "also print the canonical derivation");
        sub->callback([&cfg, &app, n = name] {
            cfg.command = n;
            cfg.tolGiven = app.get_subcommand(n)->count("--tol") > 0;
        });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? kExitOk : kExitInputError;
    }
    cfg.format = json ? OutputFormat::Json : OutputFormat::Text;
    return runCommand(cfg, out, err);
}

}  // namespace lams
