#ifndef SENSEREF_CLI_HPP
#define SENSEREF_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "senseref/enumerate.hpp"
#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/machine.hpp"
#include "senseref/oracle.hpp"
#include "senseref/parser.hpp"
#include "senseref/printer.hpp"
#include "senseref/semantics.hpp"
#include "senseref/sense.hpp"
#include "senseref/term.hpp"

namespace senseref {

struct cli_config {
    long long fuel = default_fuel;
    int bound = 7;
    int samples = 100;
    sense_mode mode = sense_mode::defn;
    bool extensional = false;
    std::uint64_t seed = 0;
    bool unicode = false;
    std::string evidence_dir;
};

struct session {
    env defs;
    cli_config cfg;
    std::string base_dir;  // `load` paths resolve here first
    int evidence_counter = 0;

    budget current_budget() const {
        return budget{cfg.fuel, cfg.bound, cfg.samples, cfg.seed};
    }
};

struct line_outcome {
    bool had_expectation = false;
    bool expectation_met = true;
    bool unexpected_unknown = false;
    bool syntax_or_config_error = false;
    bool runtime_error = false;
    bool quit = false;
};

// Commands and the kernel operations they exercise; the coverage test keeps
// this table complete.
struct op_coverage {
    const char* operation;
    const char* command;
};

inline constexpr op_coverage operation_coverage[] = {
    {"syntax.parse", "eval"},
    {"syntax.print", "eval"},
    {"syntax.alphaEq", "senseEq"},
    {"syntax.substitute", "eval"},
    {"syntax.unfold", "senseEq"},
    {"machine.isValue", "val"},
    {"machine.step", "step"},
    {"machine.eval", "eval"},
    {"machine.traceOf", "trace"},
    {"semantics.checkTypeEq", "typeEq"},
    {"semantics.checkTermEq", "termEq"},
    {"semantics.checkMember", "member"},
    {"semantics.checkHypothetical", "hyp"},
    {"semantics.checkReflection", "reflect"},
    {"semantics.checkAxiomK", "axiomK"},
    {"semantics.checkUniqueByTerms", "uniq"},
    {"sense.classify", "classify"},
    {"sense.senseEq", "senseEq"},
    {"sense.corefTerms", "coref"},
    {"sense.corefTypes", "corefT"},
    {"sense.equipollentTypesSundholm", "equip"},
    {"sense.equipollentTypesComputational", "equip"},
    {"sense.equipollentTerms", "equipT"},
    {"sense.logicalEquivalence", "logeq"},
    {"oracle.enumerateClosed", "enum"},
    {"oracle.generateMembers", "members"},
    {"oracle.normalizeOracle", "oracle"},
    {"oracle.differentialSuite", "diff"},
};

struct command_help {
    const char* name;
    const char* usage;
};

inline constexpr command_help command_table[] = {
    {"eval", "eval <t> — evaluate to a value (fuel-bounded)"},
    {"step", "step <t> — one machine transition"},
    {"trace", "trace <t> — full transition trace"},
    {"val", "val <t> — is the term a value?"},
    {"oracle", "oracle <t> — evaluate with the independent normalizer"},
    {"typeEq", "typeEq <A> <B> — judgmental type equality"},
    {"termEq", "termEq <a> <b> <A> — judgmental term equality at a type"},
    {"member", "member <a> <A> — membership (a == a : A)"},
    {"hyp", "hyp x : A, ... |- <judgment> — hypothetical judgment over closed instances"},
    {"reflect", "reflect <p> <a> <b> <A> — reflection: proof of Eq forces judgmental equality"},
    {"axiomK", "axiomK <A> <a> — every closed proof of a == a evaluates to refl"},
    {"uniq", "uniq <A> <B> — bounded coextensionality of two types"},
    {"senseEq", "senseEq <a> <b> — identity of sense (mode set by `set mode`)"},
    {"coref", "coref <a> <b> <A> — same reference for terms"},
    {"corefT", "corefT <A> <B> — same reference for types"},
    {"equip", "equip [sundholm] <A> <B> — equipollence of sentences"},
    {"equipT", "equipT <a> <b> [x : A] P — equipollence of terms under a family (or: equipT a b A)"},
    {"logeq", "logeq <f> <g> <A> <B> — logical equivalence, with coreference report"},
    {"enum", "enum <size> [ctor ...] — enumerate closed terms up to size"},
    {"members", "members <A> [size] — generated canonical members of a type"},
    {"diff", "diff <size> — differential suite over the enumerated corpus"},
    {"classify", "classify <text> — expression / program / referring"},
    {"load", "load <file> — load a definition file"},
    {"defs", "defs — list definitions"},
    {"set", "set [<key> <value>] — fuel, bound, samples, mode, extensional, seed, unicode, evidence"},
    {"help", "help — this summary"},
    {"quit", "quit — leave the session"},
};

namespace cli_detail {

struct expectation {
    enum class kind {
        none,
        verdict_is,
        term_is,
        fuel_exhausted,
        stuck,
        is_value,
        not_value,
        expression,
        program,
        referring,
    };
    kind k = kind::none;
    verdict::state vs = verdict::state::unknown;
    term_ptr t;
};

struct observed {
    std::optional<verdict::state> vstate;
    std::optional<eval_result> ev;
    std::optional<step_result> sr;
    std::optional<bool> value_flag;
    std::optional<semantic_status::kind> status;
};

inline expectation parse_expectation(term_parser& p) {
    expectation ex;
    if (p.at_end() || !p.peek_word("expect")) return ex;
    p.take_ident("expect");
    ex.k = expectation::kind::verdict_is;
    if (p.peek_word("HOLDS")) {
        p.take_ident("");
        ex.vs = verdict::state::holds;
    } else if (p.peek_word("FAILS")) {
        p.take_ident("");
        ex.vs = verdict::state::fails;
    } else if (p.peek_word("UNKNOWN")) {
        p.take_ident("");
        ex.vs = verdict::state::unknown;
    } else if (p.peek_word("FUELEXHAUSTED")) {
        p.take_ident("");
        ex.k = expectation::kind::fuel_exhausted;
    } else if (p.peek_word("STUCK")) {
        p.take_ident("");
        ex.k = expectation::kind::stuck;
    } else if (p.peek_word("VALUE")) {
        p.take_ident("");
        ex.k = expectation::kind::is_value;
    } else if (p.peek_word("NOTVALUE")) {
        p.take_ident("");
        ex.k = expectation::kind::not_value;
    } else if (p.peek_word("EXPRESSION")) {
        p.take_ident("");
        ex.k = expectation::kind::expression;
    } else if (p.peek_word("PROGRAM")) {
        p.take_ident("");
        ex.k = expectation::kind::program;
    } else if (p.peek_word("REFERRING")) {
        p.take_ident("");
        ex.k = expectation::kind::referring;
    } else {
        ex.k = expectation::kind::term_is;
        ex.t = p.parse_term();
    }
    if (!p.at_end()) p.fail("unexpected input after expectation");
    return ex;
}

inline bool expectation_met(const expectation& ex, const observed& ob, const env& e) {
    switch (ex.k) {
        case expectation::kind::none:
            return true;
        case expectation::kind::verdict_is:
            return ob.vstate && *ob.vstate == ex.vs;
        case expectation::kind::term_is: {
            term_ptr want = e.unfold(ex.t);
            if (ob.ev && ob.ev->evaluated()) return alpha_eq(e.unfold(ob.ev->t), want);
            if (ob.sr && ob.sr->is_step()) return alpha_eq(e.unfold(ob.sr->next), want);
            return false;
        }
        case expectation::kind::fuel_exhausted:
            return ob.ev && ob.ev->out_of_fuel();
        case expectation::kind::stuck:
            return (ob.ev && ob.ev->stuck()) || (ob.sr && ob.sr->is_stuck());
        case expectation::kind::is_value:
            return (ob.value_flag && *ob.value_flag) || (ob.sr && ob.sr->is_value());
        case expectation::kind::not_value:
            return ob.value_flag && !*ob.value_flag;
        case expectation::kind::expression:
            return ob.status && *ob.status == semantic_status::kind::expression;
        case expectation::kind::program:
            return ob.status && *ob.status == semantic_status::kind::program;
        case expectation::kind::referring:
            return ob.status && *ob.status == semantic_status::kind::referring;
    }
    return false;
}

inline std::string pretty(const session& s, std::string text) {
    if (!s.cfg.unicode) return text;
    auto replace_all = [&](const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = text.find(from, pos)) != std::string::npos) {
            text.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all(" == ", " \xe2\x89\xa1 ");
    replace_all("|-", "\xe2\x8a\xa2");
    return text;
}

// Dumps replayable evidence to a batch file when an evidence directory is
// configured; returns the " [evidence: ...]" suffix for the verdict line.
inline std::string dump_evidence(session& s, const verdict& v) {
    if (s.cfg.evidence_dir.empty() || v.evidence.empty()) return {};
    char name[32];
    std::snprintf(name, sizeof(name), "evidence-%04d.batch", s.evidence_counter++);
    std::string path = s.cfg.evidence_dir + "/" + name;
    std::ofstream f(path);
    if (!f) return {};
    f << "# evidence for: " << v.judgment << "\n# verdict: " << v.word() << "\n";
    for (const auto& line : v.evidence) f << line << "\n";
    return " [evidence: " + path + "]";
}

inline void print_verdict_line(session& s, std::ostream& out, verdict& v) {
    std::string suffix = dump_evidence(s, v);
    out << v.word() << " " << pretty(s, v.judgment) << suffix << "\n";
    for (const auto& n : v.notes) out << "  note: " << pretty(s, n) << "\n";
}

// Analysis-report block for the sense-layer commands.
inline void print_sense_block(session& s, std::ostream& out, const std::string& query,
                              const std::string& mode, verdict& v) {
    std::string suffix = dump_evidence(s, v);
    out << "QUERY    " << pretty(s, query) << "\n";
    out << "MODE     " << mode << "\n";
    out << "VERDICT  " << v.word() << suffix << "\n";
    out << "EVIDENCE " << (suffix.empty() ? "(inline, " + std::to_string(v.evidence.size()) + " item(s))" : suffix.substr(1)) << "\n";
    if (v.notes.empty()) {
        out << "NOTES    (none)\n";
    } else {
        for (std::size_t i = 0; i < v.notes.size(); ++i)
            out << (i == 0 ? "NOTES    " : "         ") << pretty(s, v.notes[i]) << "\n";
    }
}

inline std::string eval_summary(const session&, const eval_result& r) {
    switch (r.k) {
        case eval_result::kind::evaluated:
            return print(r.t);
        case eval_result::kind::stuck:
            return "STUCK after " + std::to_string(r.steps) + " step(s) at: " + print(r.t);
        default:
            return "FUEL-EXHAUSTED after " + std::to_string(r.fuel) + " step(s) at: " + print(r.t);
    }
}

inline term_kind kind_from_name(const std::string& n, term_parser& p) {
    if (n == "var") return term_kind::var;
    if (n == "pi") return term_kind::pi;
    if (n == "lam") return term_kind::lam;
    if (n == "app") return term_kind::app;
    if (n == "Eq" || n == "eq") return term_kind::eq;
    if (n == "refl") return term_kind::refl;
    if (n == "eqrec") return term_kind::eqrec;
    if (n == "Nat" || n == "nat") return term_kind::nat;
    if (n == "zero") return term_kind::zero;
    if (n == "succ") return term_kind::succ;
    if (n == "natrec") return term_kind::natrec;
    p.fail("unknown constructor '" + n + "'");
}

inline std::string take_constructor_word(term_parser& p) {
    switch (p.peek().kind) {
        case tok::ident:
        case tok::kw_nat:
        case tok::kw_zero:
        case tok::kw_succ:
        case tok::kw_refl:
        case tok::kw_eqrec:
        case tok::kw_natrec:
        case tok::kw_eq: {
            std::string word = p.peek().text;
            p.take_any();
            return word;
        }
        default:
            p.fail("expected a constructor name");
    }
}

}  // namespace cli_detail

inline line_outcome execute_line(session& s, const std::string& raw, std::ostream& out);

// Batch runner. Exit codes: 0 all expectations met; 1 an expectation failed
// (or a command errored); 2 a verdict came back Unknown without `expect
// UNKNOWN`; 3 syntax or configuration error.
inline int run_batch_stream(session& s, std::istream& in, std::ostream& out) {
    bool any_syntax = false, any_unmet = false, any_unknown = false;
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        auto pos = trimmed.find_first_not_of(" \t\r");
        trimmed = pos == std::string::npos ? "" : trimmed.substr(pos);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        out << "$ " << trimmed << "\n";
        line_outcome o = execute_line(s, trimmed, out);
        if (o.syntax_or_config_error) any_syntax = true;
        if (!o.expectation_met || o.runtime_error) any_unmet = true;
        if (o.unexpected_unknown) any_unknown = true;
        if (o.quit) break;
    }
    if (any_syntax) return 3;
    if (any_unmet) return 1;
    if (any_unknown) return 2;
    return 0;
}

inline int run_batch(const std::string& path, std::ostream& out, const cli_config& cfg) {
    std::ifstream f(path);
    if (!f) {
        out << "ERROR: cannot open batch file '" << path << "'\n";
        return 3;
    }
    session s;
    s.cfg = cfg;
    auto slash = path.find_last_of('/');
    s.base_dir = slash == std::string::npos ? "" : path.substr(0, slash);
    return run_batch_stream(s, f, out);
}

inline void run_repl(session& s, std::istream& in, std::ostream& out, bool prompt = false) {
    std::string line;
    if (prompt)
        out << "senseref — terms are programs, values are references. `help` lists commands.\n";
    for (;;) {
        if (prompt) out << "> " << std::flush;
        if (!std::getline(in, line)) break;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        line_outcome o = execute_line(s, line.substr(pos), out);
        if (o.quit) break;
    }
}

inline void run_repl(std::istream& in, std::ostream& out, const cli_config& cfg,
                     bool prompt = false) {
    session s;
    s.cfg = cfg;
    run_repl(s, in, out, prompt);
}

inline line_outcome execute_line(session& s, const std::string& raw, std::ostream& out) {
    using namespace cli_detail;
    line_outcome o;
    try {
        // raw-text commands first: their arguments are not term syntax
        if (raw == "quit" || raw == "exit") {
            o.quit = true;
            return o;
        }
        if (raw == "help") {
            for (const auto& c : command_table) out << c.usage << "\n";
            return o;
        }
        if (raw == "defs") {
            for (const auto& d : s.defs.definitions())
                out << "def " << d.name << " := " << print(d.body) << ";\n";
            if (s.defs.empty()) out << "(no definitions)\n";
            return o;
        }
        if (raw.rfind("load ", 0) == 0) {
            std::string path = raw.substr(5);
            auto p0 = path.find_first_not_of(" \t");
            path = p0 == std::string::npos ? "" : path.substr(p0);
            std::ifstream f;
            if (!s.base_dir.empty()) f.open(s.base_dir + "/" + path);
            if (!f.is_open()) {
                f.clear();
                f.open(path);
            }
            if (!f.is_open()) {
                out << "ERROR: cannot open definition file '" << path << "'\n";
                o.runtime_error = true;
                return o;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            std::size_t before = s.defs.size();
            parse_definitions(buf.str(), s.defs);
            out << "loaded " << (s.defs.size() - before) << " definition(s) from " << path << "\n";
            return o;
        }
        if (raw.rfind("classify", 0) == 0 && (raw.size() == 8 || raw[8] == ' ')) {
            std::string src = raw.size() > 8 ? raw.substr(9) : "";
            // peel a trailing `expect EXPRESSION|PROGRAM|REFERRING` before
            // treating the rest as raw source text
            expectation ex;
            auto epos = src.rfind(" expect ");
            if (epos != std::string::npos) {
                term_parser tail(src.substr(epos + 1), s.defs);
                tail.take_ident("expect");
                if (tail.peek_word("EXPRESSION")) ex.k = expectation::kind::expression;
                else if (tail.peek_word("PROGRAM")) ex.k = expectation::kind::program;
                else if (tail.peek_word("REFERRING")) ex.k = expectation::kind::referring;
                else tail.fail("classify expects EXPRESSION, PROGRAM, or REFERRING");
                src = src.substr(0, epos);
            }
            while (!src.empty() && (src.back() == ' ' || src.back() == '\t')) src.pop_back();
            semantic_status st = classify(src, s.defs, s.cfg.fuel);
            observed ob;
            ob.status = st.k;
            out << "QUERY    classify " << src << "\n";
            switch (st.k) {
                case semantic_status::kind::expression:
                    out << "STATUS   EXPRESSION (not interpretable: sense requires the grammar)\n";
                    out << "NOTES    " << st.parse_error << "\n";
                    break;
                case semantic_status::kind::program:
                    out << "STATUS   PROGRAM (a sense"
                        << (is_closed(st.t) ? ", no reference within fuel)"
                                            : "; open terms are not run)")
                        << "\n";
                    break;
                case semantic_status::kind::referring:
                    out << "STATUS   REFERRING\n";
                    out << "VALUE    " << print(st.value) << "\n";
                    break;
            }
            if (ex.k != expectation::kind::none) {
                o.had_expectation = true;
                o.expectation_met = expectation_met(ex, ob, s.defs);
                if (!o.expectation_met) out << "EXPECT   FAILED\n";
            }
            return o;
        }
        if (raw.rfind("set", 0) == 0 && (raw.size() == 3 || raw[3] == ' ')) {
            std::istringstream ss(raw.substr(3));
            std::string key, value;
            ss >> key >> value;
            if (key.empty()) {
                out << "fuel " << s.cfg.fuel << "\nbound " << s.cfg.bound << "\nsamples "
                    << s.cfg.samples << "\nmode " << mode_name(s.cfg.mode) << "\nextensional "
                    << (s.cfg.extensional ? "on" : "off") << "\nseed " << s.cfg.seed << "\nunicode "
                    << (s.cfg.unicode ? "on" : "off") << "\nevidence "
                    << (s.cfg.evidence_dir.empty() ? "off" : s.cfg.evidence_dir) << "\n";
                return o;
            }
            try {
                if (key == "fuel") s.cfg.fuel = std::stoll(value);
                else if (key == "bound") s.cfg.bound = std::stoi(value);
                else if (key == "samples") s.cfg.samples = std::stoi(value);
                else if (key == "seed") s.cfg.seed = std::stoull(value);
                else if (key == "mode" && value == "defn") s.cfg.mode = sense_mode::defn;
                else if (key == "mode" && value == "trace") s.cfg.mode = sense_mode::trace;
                else if (key == "extensional") s.cfg.extensional = value == "on";
                else if (key == "unicode") s.cfg.unicode = value == "on";
                else if (key == "evidence") s.cfg.evidence_dir = value == "off" ? "" : value;
                else throw config_error("unknown setting '" + key + " " + value + "'");
            } catch (const std::invalid_argument&) {
                throw config_error("bad value for '" + key + "'");
            } catch (const std::out_of_range&) {
                throw config_error("value out of range for '" + key + "'");
            }
            if (s.cfg.fuel < 0 || s.cfg.bound < 0 || s.cfg.samples < 0)
                throw config_error("budgets must be non-negative");
            return o;
        }
        if (raw.rfind("def", 0) == 0 && (raw.size() == 3 || raw[3] == ' ')) {
            std::size_t before = s.defs.size();
            parse_definitions(raw, s.defs);
            for (std::size_t i = before; i < s.defs.size(); ++i)
                out << "defined " << s.defs.definitions()[i].name << "\n";
            return o;
        }

        term_parser p(raw, s.defs);
        std::string cmd = p.take_ident("a command");
        budget bgt = s.current_budget();
        observed ob;

        auto finish = [&](const expectation& ex) {
            if (ex.k != expectation::kind::none) {
                o.had_expectation = true;
                o.expectation_met = expectation_met(ex, ob, s.defs);
                if (!o.expectation_met) out << "EXPECT   FAILED\n";
            }
            if (ob.vstate && *ob.vstate == verdict::state::unknown &&
                !(ex.k == expectation::kind::verdict_is && ex.vs == verdict::state::unknown))
                o.unexpected_unknown = true;
        };

        if (cmd == "eval" || cmd == "oracle") {
            term_ptr t = p.parse_term();
            expectation ex = parse_expectation(p);
            eval_result r = cmd == "eval" ? eval(t, s.defs, s.cfg.fuel)
                                          : normalize_oracle(t, s.defs, s.cfg.fuel);
            ob.ev = r;
            out << eval_summary(s, r) << "\n";
            finish(ex);
            return o;
        }
        if (cmd == "step") {
            term_ptr t = p.parse_term();
            expectation ex = parse_expectation(p);
            step_result r = step(t, s.defs);
            ob.sr = r;
            switch (r.k) {
                case step_result::kind::value: out << "value\n"; break;
                case step_result::kind::stuck: out << "stuck: " << r.reason << "\n"; break;
                case step_result::kind::steps_to:
                    out << (r.via_unfold ? "==> " : (s.cfg.unicode ? "\xe2\x9f\xbc " : "--> "))
                        << print(r.next) << "\n";
                    break;
            }
            finish(ex);
            return o;
        }
        if (cmd == "trace") {
            term_ptr t = p.parse_term();
            expectation ex = parse_expectation(p);
            trace tr = trace_of(t, s.defs, s.cfg.fuel);
            ob.ev = tr.terminal;
            out << render_trace(tr, s.cfg.unicode);
            finish(ex);
            return o;
        }
        if (cmd == "val") {
            term_ptr t = p.parse_term();
            expectation ex = parse_expectation(p);
            bool v = is_value(t);
            ob.value_flag = v;
            out << (v ? "value\n" : "not a value\n");
            finish(ex);
            return o;
        }
        if (cmd == "typeEq") {
            term_ptr A = p.parse_term(), B = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = check_type_eq(A, B, s.defs, bgt);
            if (s.cfg.extensional && !v.holds()) {
                verdict ext = check_unique_by_terms(A, B, s.defs, bgt);
                if (ext.holds()) {
                    ext.judgment = v.judgment;
                    ext.note("holds under the extensional (uniqueness-by-terms) rule only");
                    v = ext;
                }
            }
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "termEq") {
            term_ptr a = p.parse_term(), b = p.parse_term(), A = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = check_term_eq(a, b, A, s.defs, bgt);
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "member") {
            term_ptr a = p.parse_term(), A = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = check_member(a, A, s.defs, bgt);
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "uniq") {
            term_ptr A = p.parse_term(), B = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = check_unique_by_terms(A, B, s.defs, bgt);
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "axiomK") {
            term_ptr A = p.parse_term(), a = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = check_axiom_k(A, a, s.defs, bgt);
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "reflect") {
            term_ptr pr = p.parse_term(), a = p.parse_term(), b = p.parse_term(), A = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = check_reflection(pr, a, b, A, s.defs, bgt);
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "hyp") {
            context ctx;
            while (!p.take_if(tok::turnstile)) {
                std::string name = p.take_ident("hypothesis variable");
                p.expect(tok::colon, "':' in hypothesis");
                term_ptr ty = p.parse_term();
                ctx.push_back({name, ty});
                if (p.take_if(tok::comma)) continue;
                p.expect(tok::turnstile, "'|-' after the hypotheses");
                break;
            }
            std::string jcmd = p.take_ident("a judgment (typeEq/termEq/member)");
            judgment j = judgment::is_type(nat());
            if (jcmd == "typeEq") {
                term_ptr A = p.parse_term(), B = p.parse_term();
                j = judgment::type_eq(A, B);
            } else if (jcmd == "termEq") {
                term_ptr a = p.parse_term(), b = p.parse_term(), A = p.parse_term();
                j = judgment::term_eq(a, b, A);
            } else if (jcmd == "member") {
                term_ptr a = p.parse_term(), A = p.parse_term();
                j = judgment::member(a, A);
            } else {
                p.fail("hyp takes typeEq, termEq, or member");
            }
            expectation ex = parse_expectation(p);
            verdict v = check_hypothetical(ctx, j, s.defs, bgt);
            ob.vstate = v.st;
            print_verdict_line(s, out, v);
            finish(ex);
            return o;
        }
        if (cmd == "senseEq") {
            term_ptr a = p.parse_term(), b = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = sense_eq(a, b, s.defs, s.cfg.mode, s.cfg.fuel);
            ob.vstate = v.st;
            print_sense_block(s, out, "senseEq " + print(a) + " " + print(b),
                              mode_name(s.cfg.mode), v);
            finish(ex);
            return o;
        }
        if (cmd == "coref") {
            term_ptr a = p.parse_term(), b = p.parse_term(), A = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = coref_terms(a, b, A, s.defs, bgt);
            ob.vstate = v.st;
            print_sense_block(s, out, "coref " + print(a) + " " + print(b) + " : " + print(A),
                              "REFERENCE", v);
            finish(ex);
            return o;
        }
        if (cmd == "corefT") {
            term_ptr A = p.parse_term(), B = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = coref_types(A, B, s.defs, bgt);
            ob.vstate = v.st;
            print_sense_block(s, out, "corefT " + print(A) + " " + print(B), "REFERENCE", v);
            finish(ex);
            return o;
        }
        if (cmd == "equip") {
            bool sundholm = false;
            if (p.peek_word("sundholm")) {
                p.take_ident("");
                sundholm = true;
            } else if (p.peek_word("computational")) {
                p.take_ident("");
            }
            term_ptr A = p.parse_term(), B = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = sundholm ? equipollent_types_sundholm(A, B, s.defs, bgt)
                                 : equipollent_types_computational(A, B, s.defs, s.cfg.fuel);
            ob.vstate = v.st;
            print_sense_block(s, out, "equip " + print(A) + " " + print(B),
                              sundholm ? "SUNDHOLM" : "COMPUTATIONAL", v);
            finish(ex);
            return o;
        }
        if (cmd == "equipT") {
            term_ptr a = p.parse_term(), b = p.parse_term();
            type_family fam;
            if (p.take_if(tok::lbracket)) {
                fam.var_name = p.take_ident("family variable");
                p.expect(tok::colon, "':' in the family binder");
                fam.domain = p.parse_term();
                p.expect(tok::rbracket, "']' closing the family binder");
                fam.body = p.parse_term();
            } else {
                fam.domain = p.parse_term();
                fam.var_name = "x";
                fam.body = eq(fam.domain, var("x"), var("x"));
            }
            expectation ex = parse_expectation(p);
            verdict v = equipollent_terms(a, b, fam, s.defs, s.cfg.fuel, bgt);
            ob.vstate = v.st;
            print_sense_block(s, out, "equipT " + print(a) + " " + print(b), "COMPUTATIONAL", v);
            finish(ex);
            return o;
        }
        if (cmd == "logeq") {
            term_ptr f = p.parse_term(), g = p.parse_term(), A = p.parse_term(), B = p.parse_term();
            expectation ex = parse_expectation(p);
            verdict v = logical_equivalence(f, g, A, B, s.defs, bgt);
            ob.vstate = v.st;
            print_sense_block(s, out, "logeq " + print(A) + " <=> " + print(B), "REFERENCE", v);
            finish(ex);
            return o;
        }
        if (cmd == "enum") {
            if (p.peek().kind != tok::number) p.fail("enum needs a size bound");
            int size = std::stoi(p.peek().text);
            p.take_any();
            enum_spec spec;
            spec.max_size = size;
            spec.seed = s.cfg.seed;
            if (!p.at_end()) {
                spec.constructors.clear();
                while (!p.at_end())
                    spec.constructors.push_back(kind_from_name(take_constructor_word(p), p));
            }
            long long count = 0;
            enumerate_closed(spec, [&](const term_ptr& t) {
                out << print(t) << "\n";
                ++count;
                return true;
            });
            out << "count: " << count << "\n";
            return o;
        }
        if (cmd == "members") {
            term_ptr A = p.parse_term();
            budget mb = bgt;
            if (p.peek().kind == tok::number) {
                mb.instance_size = std::stoi(p.peek().text);
                p.take_any();
            }
            member_pool pool = generate_members(A, s.defs, mb);
            switch (pool.st) {
                case member_pool::status::ok:
                    for (const auto& m : pool.members) out << print(m) << "\n";
                    out << "count: " << pool.members.size()
                        << (pool.truncated ? " (truncated)" : "") << "\n";
                    break;
                default:
                    out << "ERROR: " << pool.detail << "\n";
                    o.runtime_error = true;
            }
            return o;
        }
        if (cmd == "diff") {
            if (p.peek().kind != tok::number) p.fail("diff needs a size bound");
            enum_spec spec;
            spec.max_size = std::stoi(p.peek().text);
            p.take_any();
            spec.seed = s.cfg.seed;
            diff_report rep = differential_suite(spec, s.defs, bgt);
            out << rep.to_text();
            if (!s.cfg.evidence_dir.empty()) {
                std::string path = s.cfg.evidence_dir + "/diff.csv";
                std::ofstream f(path);
                f << rep.to_csv();
                out << "csv: " << path << "\n";
            }
            if (!rep.clean()) o.runtime_error = true;
            return o;
        }
        p.fail("unknown command '" + cmd + "' (try `help`)");
    } catch (const syntax_error& ex) {
        out << "SYNTAX ERROR: " << ex.what() << "\n";
        o.syntax_or_config_error = true;
    } catch (const config_error& ex) {
        out << "CONFIG ERROR: " << ex.what() << "\n";
        o.syntax_or_config_error = true;
    } catch (const error& ex) {
        out << "ERROR: " << ex.what() << "\n";
        o.runtime_error = true;
        o.expectation_met = false;
    } catch (const std::exception& ex) {
        out << "ERROR: " << ex.what() << "\n";
        o.runtime_error = true;
        o.expectation_met = false;
    }
    return o;
}

}  // namespace senseref

#endif
