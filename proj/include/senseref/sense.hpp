#ifndef SENSEREF_SENSE_HPP
#define SENSEREF_SENSE_HPP

#include <string>
#include <utility>
#include <vector>

#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/machine.hpp"
#include "senseref/parser.hpp"
#include "senseref/printer.hpp"
#include "senseref/semantics.hpp"
#include "senseref/term.hpp"

namespace senseref {

// Where a piece of text lands in the expression / program / value triage:
// failing the grammar leaves a bare expression; parsing yields a program (a
// sense); evaluating to a value within fuel additionally yields a reference.
struct semantic_status {
    enum class kind { expression, program, referring };
    kind k;
    std::string parse_error;  // expression only
    term_ptr t;               // program and referring
    term_ptr value;           // referring only
    long long steps = 0;

    bool is_expression() const { return k == kind::expression; }
    bool is_program() const { return k == kind::program; }
    bool is_referring() const { return k == kind::referring; }
};

enum class sense_mode { defn, trace };

inline const char* mode_name(sense_mode m) { return m == sense_mode::defn ? "DEFN" : "TRACE"; }

inline semantic_status classify(const std::string& src, const env& e,
                                long long fuel = default_fuel) {
    term_ptr t;
    try {
        t = parse(src, e);
    } catch (const syntax_error& ex) {
        return {semantic_status::kind::expression, ex.what(), nullptr, nullptr, 0};
    }
    if (!is_closed(t)) return {semantic_status::kind::program, {}, t, nullptr, 0};
    eval_result r = eval(t, e, fuel);
    if (r.evaluated()) return {semantic_status::kind::referring, {}, t, r.t, r.steps};
    return {semantic_status::kind::program, {}, t, nullptr, r.steps};
}

namespace detail {

// The visible trace of a term: the start plus every computation step, with
// definition unfolding made transparent (unfold steps dropped, every entry
// compared fully unfolded).
struct visible_trace {
    std::vector<term_ptr> entries;
    eval_result terminal;
};

inline visible_trace visible_trace_of(const term_ptr& t, const env& e, long long fuel) {
    trace tr = trace_of(t, e, fuel);
    visible_trace out;
    out.terminal = tr.terminal;
    for (const auto& entry : tr.entries) {
        if (entry.h == trace_entry::how::unfold) {
            // replaces the previous visible entry: unfolding is not a step
            if (!out.entries.empty()) out.entries.back() = e.unfold(entry.t);
            continue;
        }
        out.entries.push_back(e.unfold(entry.t));
    }
    return out;
}

}  // namespace detail

// Identity of sense. DEFN: alpha-equivalence after unfolding definitional
// stipulations — total and decidable, open terms welcome. TRACE: lockstep
// alpha-equality of the transition traces within fuel; Unknown when fuel
// runs out with the traces still in agreement.
inline verdict sense_eq(const term_ptr& a, const term_ptr& b, const env& e,
                        sense_mode mode = sense_mode::defn, long long fuel = default_fuel) {
    verdict v;
    v.judgment = "sense " + print(a) + " ~ " + print(b) + " (mode=" + mode_name(mode) + ")";
    if (mode == sense_mode::defn) {
        term_ptr ua = e.unfold(a), ub = e.unfold(b);
        if (alpha_eq(ua, ub)) {
            v.st = verdict::state::holds;
            v.note("alpha-equal after definition unfolding");
        } else {
            v.st = verdict::state::fails;
            v.note("not alpha-equal after definition unfolding");
            v.note("unfolded left:  " + print(ua));
            v.note("unfolded right: " + print(ub));
        }
        return v;
    }
    detail::visible_trace ta = detail::visible_trace_of(a, e, fuel);
    detail::visible_trace tb = detail::visible_trace_of(b, e, fuel);
    v.evidence.push_back("trace " + print(a));
    v.evidence.push_back("trace " + print(b));
    std::size_t n = std::min(ta.entries.size(), tb.entries.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!alpha_eq(ta.entries[i], tb.entries[i])) {
            v.st = verdict::state::fails;
            v.note("traces diverge at step " + std::to_string(i) + ": " + print(ta.entries[i]) +
                   " vs " + print(tb.entries[i]));
            return v;
        }
    }
    bool a_open_ended = ta.terminal.out_of_fuel();
    bool b_open_ended = tb.terminal.out_of_fuel();
    if (ta.entries.size() != tb.entries.size()) {
        // the shorter trace must still be running for agreement to be possible
        bool shorter_unfinished = ta.entries.size() < tb.entries.size() ? a_open_ended : b_open_ended;
        if (shorter_unfinished) {
            v.st = verdict::state::unknown;
            v.note("fuel exhausted with traces in agreement so far");
        } else {
            v.st = verdict::state::fails;
            v.note("trace lengths differ: " + std::to_string(ta.entries.size()) + " vs " +
                   std::to_string(tb.entries.size()) + " entries");
        }
        return v;
    }
    if (a_open_ended || b_open_ended) {
        v.st = verdict::state::unknown;
        v.note("fuel exhausted with traces in agreement (" + std::to_string(ta.entries.size()) +
               " entries compared)");
        return v;
    }
    if (ta.terminal.k != tb.terminal.k) {
        v.st = verdict::state::fails;
        v.note("traces agree pointwise but end differently");
        return v;
    }
    v.st = verdict::state::holds;
    v.note("lockstep traces, " + std::to_string(ta.entries.size()) + " entries, ending " +
           (ta.terminal.evaluated() ? "in a value" : "stuck"));
    return v;
}

// Same reference for terms: delegates to judgmental term equality.
inline verdict coref_terms(const term_ptr& a, const term_ptr& b, const term_ptr& A, const env& e,
                           const budget& bgt = {}) {
    verdict v = check_term_eq(a, b, A, e, bgt);
    v.judgment = "coref " + print(a) + " ~ " + print(b) + " : " + print(A);
    if (v.holds()) v.note("same reference: both senses specify one value");
    return v;
}

// Same reference for types: delegates to judgmental type equality.
inline verdict coref_types(const term_ptr& A, const term_ptr& B, const env& e,
                           const budget& bgt = {}) {
    verdict v = check_type_eq(A, B, e, bgt);
    v.judgment = "corefT " + print(A) + " ~ " + print(B);
    if (v.holds()) v.note("same reference: both evaluate to one canonical type");
    return v;
}

// Equipollence of sentences under the realizer-transfer reading: bounded
// coextensionality. This reading certifies coreference, not sameness of
// sense.
inline verdict equipollent_types_sundholm(const term_ptr& A, const term_ptr& B, const env& e,
                                          const budget& bgt = {}) {
    verdict v = check_unique_by_terms(A, B, e, bgt);
    v.judgment = "equip(sundholm) " + print(A) + " ~ " + print(B);
    v.note("realizer-transfer reading: certifies coreference, not sameness of sense");
    return v;
}

// Equipollence of sentences under the computational reading: identity of
// sense, decided as DEFN sense equality with trace diagnostics on failure.
inline verdict equipollent_types_computational(const term_ptr& A, const term_ptr& B, const env& e,
                                               long long fuel = default_fuel) {
    verdict v = sense_eq(A, B, e, sense_mode::defn, fuel);
    v.judgment = "equip " + print(A) + " ~ " + print(B);
    if (v.holds()) {
        v.note("equipollent: same computational behavior, hence same sense");
        return v;
    }
    if (is_closed(A) && is_closed(B)) {
        verdict tr = sense_eq(A, B, e, sense_mode::trace, fuel);
        v.note(std::string("trace diagnostic: ") + tr.word());
        for (const auto& n : tr.notes) v.note(n);
    }
    return v;
}

// An open type x : A |- P(x); equipollence of terms a, b : A is equipollence
// of P(a) and P(b).
struct type_family {
    std::string var_name;
    term_ptr domain;
    term_ptr body;
};

inline verdict equipollent_terms(const term_ptr& a, const term_ptr& b, const type_family& fam,
                                 const env& e, long long fuel = default_fuel,
                                 const budget& bgt = {}) {
    verdict ma = check_member(a, fam.domain, e, bgt);
    verdict mb = check_member(b, fam.domain, e, bgt);
    if (ma.fails() || mb.fails())
        throw type_mismatch("equipollence needs both terms in " + print(fam.domain) + ": " +
                            print(ma.fails() ? a : b) + " is not a member");
    verdict v;
    std::string famtext = "[" + fam.var_name + " : " + print(fam.domain) + "] " + print(fam.body);
    if (ma.unknown() || mb.unknown()) {
        v.judgment = "equipT " + print(a) + " ~ " + print(b) + " via " + famtext;
        v.st = verdict::state::unknown;
        v.note("membership in " + print(fam.domain) + " undecided within budget");
        return v;
    }
    v = equipollent_types_computational(substitute(fam.body, fam.var_name, a),
                                        substitute(fam.body, fam.var_name, b), e, fuel);
    v.judgment = "equipT " + print(a) + " ~ " + print(b) + " via " + famtext;
    v.note("family: " + famtext);
    return v;
}

// Logical equivalence: functions both ways. Holds says nothing about
// coreference; when the types are not coreferential the report flags the
// pair as a counterexample to propositional extensionality.
inline verdict logical_equivalence(const term_ptr& f, const term_ptr& g, const term_ptr& A,
                                   const term_ptr& B, const env& e, const budget& bgt = {}) {
    term_ptr fwd = pi(fresh_name("_", free_vars(B)), A, B);
    term_ptr bwd = pi(fresh_name("_", free_vars(A)), B, A);
    verdict mf = check_member(f, fwd, e, bgt);
    verdict mg = check_member(g, bwd, e, bgt);
    verdict v;
    v.judgment = "logeq " + print(A) + " <=> " + print(B);
    v.instances = mf.instances + mg.instances;
    if (mf.fails() || mg.fails()) {
        v.st = verdict::state::fails;
        const verdict& bad = mf.fails() ? mf : mg;
        v.note((mf.fails() ? print(f) + " : " + print(fwd) : print(g) + " : " + print(bwd)) +
               " does not hold");
        for (const auto& n : bad.notes) v.note(n);
        return v;
    }
    if (mf.unknown() || mg.unknown()) {
        v.st = verdict::state::unknown;
        v.note("membership undecided within budget");
        return v;
    }
    v.st = verdict::state::holds;
    v.note("witnesses: " + print(f) + " and " + print(g));
    verdict coref = check_type_eq(A, B, e, bgt);
    v.note(std::string("coreference of the two types: ") + coref.word());
    if (coref.fails())
        v.note("counterexample: logically equivalent but not coreferential; "
               "propositional extensionality fails here");
    return v;
}

}  // namespace senseref

#endif
