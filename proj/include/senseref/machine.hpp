#ifndef SENSEREF_MACHINE_HPP
#define SENSEREF_MACHINE_HPP

#include <string>
#include <utility>
#include <vector>

#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/printer.hpp"
#include "senseref/term.hpp"

namespace senseref {

inline constexpr long long default_fuel = 100000;

struct step_result {
    enum class kind { value, steps_to, stuck };
    kind k;
    term_ptr next;          // steps_to only
    bool via_unfold = false;  // transition-transparent definition unfolding
    std::string reason;     // stuck only

    bool is_value() const { return k == kind::value; }
    bool is_step() const { return k == kind::steps_to; }
    bool is_stuck() const { return k == kind::stuck; }
};

struct eval_result {
    enum class kind { evaluated, fuel_exhausted, stuck };
    kind k;
    term_ptr t;        // the value, the last term seen, or the stuck term
    long long steps = 0;
    long long fuel = 0;

    bool evaluated() const { return k == kind::evaluated; }
    bool out_of_fuel() const { return k == kind::fuel_exhausted; }
    bool stuck() const { return k == kind::stuck; }
};

struct trace_entry {
    enum class how { initial, step, unfold };
    term_ptr t;
    how h;
};

struct trace {
    std::vector<trace_entry> entries;
    eval_result terminal;
};

namespace detail {

inline void require_closed(const term_ptr& t) {
    auto fv = free_vars(t);
    if (!fv.empty()) throw open_term_error(*fv.begin());
}

// λx.a(x) with x not free in a; such a lambda reduces and is not a value.
inline bool is_eta_redex(const term_ptr& t) {
    if (t->kind != term_kind::lam) return false;
    const term_ptr& body = t->a;
    return body->kind == term_kind::app && body->b->kind == term_kind::var &&
           body->b->name == t->name && !occurs_free(body->a, t->name);
}

inline bool value_form(const term_ptr& t) {
    switch (t->kind) {
        case term_kind::pi:
        case term_kind::eq:
        case term_kind::refl:
        case term_kind::nat:
        case term_kind::zero:
        case term_kind::succ:
            return true;
        case term_kind::lam:
            return !is_eta_redex(t);
        default:
            return false;
    }
}

inline step_result step_unchecked(const term_ptr& t, const env& e);

// Head congruence for app/eqrec/natrec: step the scrutinee and rebuild.
template <typename Rebuild>
inline step_result step_head(const term_ptr& head, const env& e, Rebuild rebuild,
                             const char* stuck_reason) {
    step_result r = step_unchecked(head, e);
    switch (r.k) {
        case step_result::kind::steps_to:
            return {step_result::kind::steps_to, rebuild(r.next), r.via_unfold, {}};
        case step_result::kind::value:
            return {step_result::kind::stuck, nullptr, false, stuck_reason};
        case step_result::kind::stuck:
            return r;
    }
    return r;
}

inline step_result step_unchecked(const term_ptr& t, const env& e) {
    switch (t->kind) {
        case term_kind::defref: {
            const term_ptr* body = e.find(t->name);
            if (!body) throw unknown_definition(t->name);
            return {step_result::kind::steps_to, *body, true, {}};
        }
        case term_kind::lam:
            if (is_eta_redex(t)) return {step_result::kind::steps_to, t->a->a, false, {}};
            return {step_result::kind::value, nullptr, false, {}};
        case term_kind::app: {
            const term_ptr& fn = t->a;
            if (fn->kind == term_kind::lam)
                return {step_result::kind::steps_to, substitute(fn->a, fn->name, t->b), false, {}};
            return step_head(
                fn, e, [&](const term_ptr& fn2) { return app(fn2, t->b); },
                "cannot apply a value that is not a function");
        }
        case term_kind::eqrec: {
            const term_ptr& scrut = t->a;
            if (scrut->kind == term_kind::refl)
                return {step_result::kind::steps_to, t->b, false, {}};
            return step_head(
                scrut, e, [&](const term_ptr& s2) { return eqrec(s2, t->b); },
                "eqrec scrutinee is not a refl value");
        }
        case term_kind::natrec: {
            const term_ptr& scrut = t->a;
            if (scrut->kind == term_kind::zero)
                return {step_result::kind::steps_to, t->b, false, {}};
            if (scrut->kind == term_kind::succ)
                return {step_result::kind::steps_to,
                        app(app(t->c, scrut->a), natrec(scrut->a, t->b, t->c)), false, {}};
            return step_head(
                scrut, e, [&](const term_ptr& s2) { return natrec(s2, t->b, t->c); },
                "natrec scrutinee is not a numeral constructor");
        }
        case term_kind::var:
            throw open_term_error(t->name);
        default:
            return {step_result::kind::value, nullptr, false, {}};
    }
}

}  // namespace detail

// Value test for closed terms. DefRefs are not value forms themselves but
// may occur inside constructor arguments (values are weak).
inline bool is_value(const term_ptr& t) {
    detail::require_closed(t);
    return detail::value_form(t);
}

// One transition of the machine. Head DefRefs unfold one level, flagged
// via_unfold; such transitions are not counted as computation steps.
inline step_result step(const term_ptr& t, const env& e) {
    detail::require_closed(t);
    return detail::step_unchecked(t, e);
}

inline eval_result eval(const term_ptr& t0, const env& e, long long fuel = default_fuel) {
    detail::require_closed(t0);
    if (fuel < 0) fuel = 0;
    term_ptr t = t0;
    long long steps = 0;
    for (;;) {
        step_result r = detail::step_unchecked(t, e);
        switch (r.k) {
            case step_result::kind::value:
                return {eval_result::kind::evaluated, t, steps, fuel};
            case step_result::kind::stuck:
                return {eval_result::kind::stuck, t, steps, fuel};
            case step_result::kind::steps_to:
                if (r.via_unfold) {
                    t = r.next;
                } else {
                    if (steps == fuel) return {eval_result::kind::fuel_exhausted, t, steps, fuel};
                    ++steps;
                    t = r.next;
                }
        }
    }
}

inline trace trace_of(const term_ptr& t0, const env& e, long long fuel = default_fuel) {
    detail::require_closed(t0);
    if (fuel < 0) fuel = 0;
    trace tr;
    tr.entries.push_back({t0, trace_entry::how::initial});
    term_ptr t = t0;
    long long steps = 0;
    for (;;) {
        step_result r = detail::step_unchecked(t, e);
        switch (r.k) {
            case step_result::kind::value:
                tr.terminal = {eval_result::kind::evaluated, t, steps, fuel};
                return tr;
            case step_result::kind::stuck:
                tr.terminal = {eval_result::kind::stuck, t, steps, fuel};
                return tr;
            case step_result::kind::steps_to:
                if (r.via_unfold) {
                    t = r.next;
                    tr.entries.push_back({t, trace_entry::how::unfold});
                } else {
                    if (steps == fuel) {
                        tr.terminal = {eval_result::kind::fuel_exhausted, t, steps, fuel};
                        return tr;
                    }
                    ++steps;
                    t = r.next;
                    tr.entries.push_back({t, trace_entry::how::step});
                }
        }
    }
}

// One term per line; computation steps are prefixed with the transition
// arrow, definition unfoldings with "==>".
inline std::string render_trace(const trace& tr, bool unicode = false) {
    std::string out;
    const char* arrow = unicode ? "\xe2\x9f\xbc " : "--> ";
    for (const auto& entry : tr.entries) {
        switch (entry.h) {
            case trace_entry::how::initial: break;
            case trace_entry::how::step: out += arrow; break;
            case trace_entry::how::unfold: out += "==> "; break;
        }
        out += print(entry.t);
        out += '\n';
    }
    switch (tr.terminal.k) {
        case eval_result::kind::evaluated:
            out += "value (" + std::to_string(tr.terminal.steps) + " step(s))\n";
            break;
        case eval_result::kind::stuck:
            out += "stuck after " + std::to_string(tr.terminal.steps) + " step(s)\n";
            break;
        case eval_result::kind::fuel_exhausted:
            out += "fuel exhausted (" + std::to_string(tr.terminal.fuel) + " step(s) taken)\n";
            break;
    }
    return out;
}

}  // namespace senseref

#endif
