#ifndef SENSEREF_ORACLE_HPP
#define SENSEREF_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "senseref/enumerate.hpp"
#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/machine.hpp"
#include "senseref/printer.hpp"
#include "senseref/semantics.hpp"
#include "senseref/term.hpp"

namespace senseref {

namespace oracle_detail {

// The differential evaluator is written as big-step structural recursion on
// the head spine with an in-place loop for contracta. It shares only the
// syntax primitives with the machine — no step function, no value test —
// so agreement between the two is evidence rather than tautology.

struct fuel_tank {
    long long remaining;
    bool spend() {
        if (remaining == 0) return false;
        --remaining;
        return true;
    }
};

enum class outcome { value, stuck, dry };

struct result {
    outcome o;
    term_ptr t;  // the value, the stuck term, or the term at fuel exhaustion
};

inline bool eta_contractible(const term_ptr& t) {
    return t->kind == term_kind::lam && t->a->kind == term_kind::app &&
           t->a->b->kind == term_kind::var && t->a->b->name == t->name &&
           !occurs_free(t->a->a, t->name);
}

inline result reduce(term_ptr t, const env& e, fuel_tank& fuel) {
    for (;;) {
        switch (t->kind) {
            case term_kind::var:
                throw open_term_error(t->name);
            case term_kind::defref: {
                const term_ptr* body = e.find(t->name);
                if (!body) throw unknown_definition(t->name);
                t = *body;
                continue;
            }
            case term_kind::lam:
                if (eta_contractible(t)) {
                    if (!fuel.spend()) return {outcome::dry, t};
                    t = t->a->a;
                    continue;
                }
                return {outcome::value, t};
            case term_kind::app: {
                if (t->a->kind == term_kind::lam) {
                    if (!fuel.spend()) return {outcome::dry, t};
                    t = substitute(t->a->a, t->a->name, t->b);
                    continue;
                }
                result head = reduce(t->a, e, fuel);
                term_ptr rebuilt = app(head.t, t->b);
                if (head.o != outcome::value) return {head.o, rebuilt};
                if (head.t->kind == term_kind::lam) {
                    t = rebuilt;
                    continue;
                }
                return {outcome::stuck, rebuilt};
            }
            case term_kind::eqrec: {
                if (t->a->kind == term_kind::refl) {
                    if (!fuel.spend()) return {outcome::dry, t};
                    t = t->b;
                    continue;
                }
                result head = reduce(t->a, e, fuel);
                term_ptr rebuilt = eqrec(head.t, t->b);
                if (head.o != outcome::value) return {head.o, rebuilt};
                if (head.t->kind == term_kind::refl) {
                    t = rebuilt;
                    continue;
                }
                return {outcome::stuck, rebuilt};
            }
            case term_kind::natrec: {
                if (t->a->kind == term_kind::zero) {
                    if (!fuel.spend()) return {outcome::dry, t};
                    t = t->b;
                    continue;
                }
                if (t->a->kind == term_kind::succ) {
                    if (!fuel.spend()) return {outcome::dry, t};
                    t = app(app(t->c, t->a->a), natrec(t->a->a, t->b, t->c));
                    continue;
                }
                result head = reduce(t->a, e, fuel);
                term_ptr rebuilt = natrec(head.t, t->b, t->c);
                if (head.o != outcome::value) return {head.o, rebuilt};
                if (head.t->kind == term_kind::zero || head.t->kind == term_kind::succ) {
                    t = rebuilt;
                    continue;
                }
                return {outcome::stuck, rebuilt};
            }
            default:
                // pi, eq, refl, nat, zero, succ are values outright
                return {outcome::value, t};
        }
    }
}

}  // namespace oracle_detail

// Independent normalizer; must agree with eval on every closed input
// (termination within fuel, step count, and result up to alpha).
inline eval_result normalize_oracle(const term_ptr& t, const env& e,
                                    long long fuel = default_fuel) {
    {
        auto fv = free_vars(t);
        if (!fv.empty()) throw open_term_error(*fv.begin());
    }
    if (fuel < 0) fuel = 0;
    oracle_detail::fuel_tank tank{fuel};
    oracle_detail::result r = oracle_detail::reduce(t, e, tank);
    long long spent = fuel - tank.remaining;
    switch (r.o) {
        case oracle_detail::outcome::value:
            return {eval_result::kind::evaluated, r.t, spent, fuel};
        case oracle_detail::outcome::stuck:
            return {eval_result::kind::stuck, r.t, spent, fuel};
        default:
            return {eval_result::kind::fuel_exhausted, r.t, spent, fuel};
    }
}

// Oracle-surface member generation: deterministic, enumeration only.
inline member_pool generate_members(const term_ptr& A, const enum_spec& spec, const env& e) {
    budget b;
    b.instance_size = spec.max_size;
    b.seed = spec.seed;
    b.samples = 0;
    return generate_members(A, e, b);
}

// Type-directed equality decision through the oracle route: normalize both
// sides and compare canonically, probing function types by application to
// generated members instead of substituting into bodies.
inline verdict oracle_term_eq(const term_ptr& a, const term_ptr& b, const term_ptr& A, const env& e,
                              const budget& bgt = {}, int depth = 0) {
    verdict v;
    v.judgment = "oracle: " + print(a) + " == " + print(b) + " : " + print(A);
    if (depth > 64) {
        v.st = verdict::state::unknown;
        v.note("oracle depth limit");
        return v;
    }
    eval_result ty = normalize_oracle(A, e, bgt.fuel);
    if (ty.out_of_fuel()) {
        v.st = verdict::state::unknown;
        return v;
    }
    if (ty.stuck()) throw not_canonical_type("oracle: type is stuck");
    eval_result ra = normalize_oracle(a, e, bgt.fuel);
    eval_result rb = normalize_oracle(b, e, bgt.fuel);
    if (ra.out_of_fuel() || rb.out_of_fuel()) {
        v.st = verdict::state::unknown;
        return v;
    }
    if (ra.stuck() || rb.stuck()) {
        v.st = verdict::state::fails;
        return v;
    }
    auto decide = [&](verdict::state s) {
        v.st = s;
        return v;
    };
    switch (ty.t->kind) {
        case term_kind::nat: {
            if (ra.t->kind == term_kind::zero && rb.t->kind == term_kind::zero)
                return decide(verdict::state::holds);
            if (ra.t->kind == term_kind::succ && rb.t->kind == term_kind::succ)
                return oracle_term_eq(ra.t->a, rb.t->a, nat(), e, bgt, depth + 1);
            return decide(verdict::state::fails);
        }
        case term_kind::eq: {
            if (ra.t->kind != term_kind::refl || rb.t->kind != term_kind::refl)
                return decide(verdict::state::fails);
            verdict l = oracle_term_eq(ra.t->a, ty.t->b, ty.t->a, e, bgt, depth + 1);
            verdict r = oracle_term_eq(rb.t->a, ty.t->c, ty.t->a, e, bgt, depth + 1);
            verdict ends = oracle_term_eq(ty.t->b, ty.t->c, ty.t->a, e, bgt, depth + 1);
            if (l.fails() || r.fails() || ends.fails()) return decide(verdict::state::fails);
            if (l.unknown() || r.unknown() || ends.unknown())
                return decide(verdict::state::unknown);
            return decide(verdict::state::holds);
        }
        case term_kind::pi: {
            if (ra.t->kind != term_kind::lam || rb.t->kind != term_kind::lam)
                return decide(verdict::state::fails);
            member_pool pool = generate_members(ty.t->a, e, bgt);
            if (pool.st != member_pool::status::ok) {
                if (pool.st == member_pool::status::not_a_type)
                    throw not_canonical_type(pool.detail);
                return decide(verdict::state::unknown);
            }
            bool saw_unknown = false;
            for (const auto& u : pool.members) {
                verdict inst = oracle_term_eq(app(ra.t, u), app(rb.t, u),
                                              substitute(ty.t->b, ty.t->name, u), e, bgt, depth + 1);
                if (inst.fails()) return decide(verdict::state::fails);
                if (inst.unknown()) saw_unknown = true;
            }
            return decide(saw_unknown ? verdict::state::unknown : verdict::state::holds);
        }
        default:
            throw not_canonical_type("oracle: '" + print(ty.t) + "' is not a canonical type");
    }
}

// Differential report over an enumerated closed corpus. Any disagreement is
// a bug in one of the two routes; the CSV lists one row per finding plus
// summary counters.
struct diff_report {
    long long terms = 0;
    long long values = 0;
    long long stuck_terms = 0;
    long long fuel_exhausted_terms = 0;
    long long determinism_checks = 0;
    long long eval_agreements = 0;
    long long term_eq_pairs = 0;
    long long k_proofs = 0;
    long long reflection_pairs = 0;
    std::vector<std::string> disagreements;

    bool clean() const { return disagreements.empty(); }

    std::string to_text() const {
        std::string s;
        s += "terms enumerated:        " + std::to_string(terms) + "\n";
        s += "  values:                " + std::to_string(values) + "\n";
        s += "  stuck:                 " + std::to_string(stuck_terms) + "\n";
        s += "  fuel-exhausted:        " + std::to_string(fuel_exhausted_terms) + "\n";
        s += "determinism checks:      " + std::to_string(determinism_checks) + "\n";
        s += "eval/oracle agreements:  " + std::to_string(eval_agreements) + "\n";
        s += "termEq/oracle pairs:     " + std::to_string(term_eq_pairs) + "\n";
        s += "K proofs checked:        " + std::to_string(k_proofs) + "\n";
        s += "reflection pairs:        " + std::to_string(reflection_pairs) + "\n";
        s += "disagreements:           " + std::to_string(disagreements.size()) + "\n";
        for (const auto& d : disagreements) s += "  ! " + d + "\n";
        return s;
    }

    std::string to_csv() const {
        std::string s = "term,check,verdict\n";
        auto row = [&](const std::string& t, const char* c, const std::string& vd) {
            std::string quoted = t;
            for (std::size_t i = 0; i < quoted.size(); ++i)
                if (quoted[i] == '"') quoted.insert(i++, 1, '"');
            s += "\"" + quoted + "\"," + c + "," + vd + "\n";
        };
        row("(corpus)", "terms", std::to_string(terms));
        row("(corpus)", "determinism", std::to_string(determinism_checks));
        row("(corpus)", "eval-agreement", std::to_string(eval_agreements));
        row("(corpus)", "termeq-agreement", std::to_string(term_eq_pairs));
        row("(corpus)", "axiom-k", std::to_string(k_proofs));
        row("(corpus)", "reflection", std::to_string(reflection_pairs));
        for (const auto& d : disagreements) row(d, "disagreement", "FAIL");
        return s;
    }
};

inline diff_report differential_suite(const enum_spec& spec, const env& e, const budget& bgt = {}) {
    diff_report rep;

    // (i)+(ii): machine classification is a partition, values are normal,
    // and the machine agrees with the independent normalizer everywhere.
    enumerate_closed(spec, [&](const term_ptr& t) {
        ++rep.terms;
        bool val = is_value(t);
        step_result sr = step(t, e);
        ++rep.determinism_checks;
        if (val != sr.is_value()) {
            rep.disagreements.push_back("value/step mismatch on " + print(t));
            return true;
        }
        eval_result m = eval(t, e, bgt.fuel);
        eval_result o = normalize_oracle(t, e, bgt.fuel);
        if (val && !(m.evaluated() && m.steps == 0)) {
            rep.disagreements.push_back("value does not evaluate to itself: " + print(t));
            return true;
        }
        bool agree = m.k == o.k && m.steps == o.steps && alpha_eq(m.t, o.t);
        if (!agree) {
            rep.disagreements.push_back("eval/oracle disagree on " + print(t));
            return true;
        }
        ++rep.eval_agreements;
        switch (m.k) {
            case eval_result::kind::evaluated: ++rep.values; break;
            case eval_result::kind::stuck: ++rep.stuck_terms; break;
            default: ++rep.fuel_exhausted_terms; break;
        }
        return true;
    });

    // (iii): the meaning-explanation checker against the oracle's
    // normalize-and-compare route, over small pairs at canonical types.
    enum_spec pair_spec = spec;
    pair_spec.max_size = std::min(spec.max_size, 4);
    std::vector<term_ptr> small = enumerate_closed_all(pair_spec);
    std::vector<term_ptr> types = {nat(), eq(nat(), zero(), zero()),
                                   eq(nat(), zero(), succ(zero())), pi("x", nat(), nat())};
    for (const auto& A : types) {
        for (const auto& a : small) {
            for (const auto& b : small) {
                verdict mine = check_term_eq(a, b, A, e, bgt);
                verdict theirs = oracle_term_eq(a, b, A, e, bgt);
                ++rep.term_eq_pairs;
                bool clash = (mine.holds() && theirs.fails()) ||
                             (mine.fails() && theirs.holds()) ||
                             (mine.unknown() && !theirs.unknown());
                if (clash)
                    rep.disagreements.push_back("termEq/oracle disagree on " + print(a) + " vs " +
                                                print(b) + " at " + print(A));
            }
        }
    }

    // (iv): K and reflection over generated members of equality types.
    budget kb = bgt;
    kb.instance_size = std::min(bgt.instance_size, 5);
    for (const auto& A : {nat(), eq(nat(), zero(), zero())}) {
        member_pool pool = generate_members(A, e, kb);
        if (pool.st != member_pool::status::ok) continue;
        for (const auto& a : pool.members) {
            verdict k = check_axiom_k(A, a, e, kb);
            rep.k_proofs += k.instances;
            if (!k.holds())
                rep.disagreements.push_back("axiom K violated at " + print(eq(A, a, a)));
            for (const auto& b : pool.members) {
                term_ptr ty = eq(A, a, b);
                member_pool proofs = generate_members(ty, e, kb);
                if (proofs.st != member_pool::status::ok) continue;
                for (const auto& p : proofs.members) {
                    ++rep.reflection_pairs;
                    verdict refl_ok = check_term_eq(a, b, A, e, kb);
                    if (refl_ok.fails())
                        rep.disagreements.push_back("reflection violated: proof " + print(p) +
                                                    " of " + print(ty));
                }
            }
        }
    }
    return rep;
}

}  // namespace senseref

#endif
