#ifndef SENSEREF_SEMANTICS_HPP
#define SENSEREF_SEMANTICS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "senseref/enumerate.hpp"
#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/machine.hpp"
#include "senseref/printer.hpp"
#include "senseref/term.hpp"

namespace senseref {

// Resource limits for the semi-decision checkers: fuel per evaluation,
// maximum size of enumerated closed instances, and random instances drawn
// per hypothesis. The seed fixes the sampling stream.
struct budget {
    long long fuel = default_fuel;
    int instance_size = 7;
    int samples = 100;
    std::uint64_t seed = 0;
};

// Three-valued outcome of a check. Holds and Fails carry replayable
// evidence (batch-format command lines); Unknown means some budget ran out.
// A Holds derived from instance enumeration is bounded validation, not
// proof, and says so in its notes.
struct verdict {
    enum class state { holds, fails, unknown };
    state st = state::unknown;
    std::string judgment;
    std::vector<std::string> notes;
    std::vector<std::string> evidence;
    long long instances = 0;

    bool holds() const { return st == state::holds; }
    bool fails() const { return st == state::fails; }
    bool unknown() const { return st == state::unknown; }

    const char* word() const {
        switch (st) {
            case state::holds: return "HOLDS";
            case state::fails: return "FAILS";
            default: return "UNKNOWN";
        }
    }

    verdict& note(std::string n) {
        notes.push_back(std::move(n));
        return *this;
    }
};

struct hypothesis {
    std::string name;
    term_ptr type;
};
using context = std::vector<hypothesis>;

// The four judgment forms. Typehood and membership are the reflexive
// specializations of the two equality forms.
struct judgment {
    enum class form { type_eq, term_eq, is_type, member };
    form f;
    term_ptr t1, t2, ty;

    static judgment type_eq(term_ptr a, term_ptr b) {
        return {form::type_eq, std::move(a), std::move(b), nullptr};
    }
    static judgment term_eq(term_ptr a, term_ptr b, term_ptr A) {
        return {form::term_eq, std::move(a), std::move(b), std::move(A)};
    }
    static judgment is_type(term_ptr a) { return {form::is_type, std::move(a), nullptr, nullptr}; }
    static judgment member(term_ptr a, term_ptr A) {
        return {form::member, std::move(a), nullptr, std::move(A)};
    }
};

inline std::string show(const judgment& j) {
    switch (j.f) {
        case judgment::form::type_eq: return print(j.t1) + " == " + print(j.t2) + " type";
        case judgment::form::term_eq:
            return print(j.t1) + " == " + print(j.t2) + " : " + print(j.ty);
        case judgment::form::is_type: return print(j.t1) + " type";
        case judgment::form::member: return print(j.t1) + " : " + print(j.ty);
    }
    return {};
}

inline std::string show(const context& ctx, const judgment& j) {
    std::string out;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (i) out += ", ";
        out += ctx[i].name + " : " + print(ctx[i].type);
    }
    out += out.empty() ? "|- " : " |- ";
    return out + show(j);
}

// The batch command that replays a categorical judgment check.
inline std::string replay_command(const judgment& j) {
    switch (j.f) {
        case judgment::form::type_eq: return "typeEq " + print(j.t1) + " " + print(j.t2);
        case judgment::form::term_eq:
            return "termEq " + print(j.t1) + " " + print(j.t2) + " " + print(j.ty);
        case judgment::form::is_type: return "typeEq " + print(j.t1) + " " + print(j.t1);
        case judgment::form::member: return "member " + print(j.t1) + " " + print(j.ty);
    }
    return {};
}

// Type-directed closed-instance generation. `status` reports why a pool may
// be unusable; an ok-but-empty pool means the type has no inhabitants within
// the size bound (a vacuous hypothesis).
struct member_pool {
    enum class status { ok, fuel_exhausted, not_a_type, depth };
    status st = status::ok;
    std::vector<term_ptr> members;
    bool truncated = false;
    std::string detail;
};

namespace detail {

constexpr int max_check_depth = 64;
constexpr std::size_t pool_cap = 256;
constexpr std::size_t candidate_cap = 4000;
constexpr long long hypothetical_cap = 50000;
constexpr std::size_t evidence_cap = 24;

inline void add_evidence(verdict& v, std::string line) {
    if (v.evidence.size() < evidence_cap)
        v.evidence.push_back(std::move(line));
    else if (v.evidence.size() == evidence_cap)
        v.evidence.push_back("# (further evidence elided)");
}

struct checker {
    const env& e;
    budget bgt;
    int depth = 0;

    struct eval_outcome {
        enum class st { value, fuel, stuck };
        st s;
        term_ptr v;
        long long steps = 0;
    };

    eval_outcome evaluate(const term_ptr& t) const {
        eval_result r = eval(t, e, bgt.fuel);
        switch (r.k) {
            case eval_result::kind::evaluated:
                return {eval_outcome::st::value, r.t, r.steps};
            case eval_result::kind::fuel_exhausted:
                return {eval_outcome::st::fuel, r.t, r.steps};
            default:
                return {eval_outcome::st::stuck, r.t, r.steps};
        }
    }

    checker deeper() const { return {e, bgt, depth + 1}; }

    bool too_deep(verdict& v) const {
        if (depth <= max_check_depth) return false;
        v.st = verdict::state::unknown;
        v.note("check depth limit reached");
        return true;
    }

    static bool is_canonical_type(const term_ptr& v) {
        return v->kind == term_kind::pi || v->kind == term_kind::eq || v->kind == term_kind::nat;
    }

    // --- instance generation -------------------------------------------

    member_pool gen_members(const term_ptr& A) const {
        std::mt19937_64 rng(bgt.seed ^ (std::hash<std::string>{}(print(A)) | 1));
        return gen_members_rng(A, rng);
    }

    member_pool gen_members_rng(const term_ptr& A, std::mt19937_64& rng) const {
        member_pool pool;
        if (depth > max_check_depth) {
            pool.st = member_pool::status::depth;
            pool.detail = "check depth limit during instance generation";
            return pool;
        }
        eval_outcome ty = evaluate(A);
        if (ty.s == eval_outcome::st::fuel) {
            pool.st = member_pool::status::fuel_exhausted;
            pool.detail = "fuel exhausted evaluating " + print(A);
            return pool;
        }
        if (ty.s == eval_outcome::st::stuck || !is_canonical_type(ty.v)) {
            pool.st = member_pool::status::not_a_type;
            pool.detail = print(A) + " does not evaluate to a canonical type";
            return pool;
        }
        switch (ty.v->kind) {
            case term_kind::nat: {
                std::set<std::uint64_t> seen;
                for (int n = 0; n + 1 <= bgt.instance_size; ++n) {
                    pool.members.push_back(numeral(static_cast<std::uint64_t>(n)));
                    seen.insert(static_cast<std::uint64_t>(n));
                }
                for (int s = 0; s < bgt.samples; ++s) {
                    std::uint64_t n = rng() % 33;
                    if (seen.insert(n).second) pool.members.push_back(numeral(n));
                }
                break;
            }
            case term_kind::eq: {
                std::vector<term_ptr> candidates;
                candidates.push_back(refl(ty.v->b));
                candidates.push_back(refl(ty.v->c));
                checker base = deeper();
                member_pool inner = base.gen_members_rng(ty.v->a, rng);
                if (inner.st == member_pool::status::ok)
                    for (const auto& m : inner.members) candidates.push_back(refl(m));
                filter_members(A, candidates, pool);
                break;
            }
            case term_kind::pi: {
                std::vector<term_ptr> candidates;
                enum_spec body_spec;
                body_spec.max_size = std::max(1, bgt.instance_size - 1);
                enumerate_closed(body_spec, [&](const term_ptr& body) {
                    candidates.push_back(lam("x0", body));
                    return candidates.size() < candidate_cap;
                }, 1);
                if (candidates.size() >= candidate_cap) pool.truncated = true;
                for (int s = 0; s < bgt.samples; ++s) {
                    term_ptr body = random_term(rng, bgt.instance_size + 2, 1, body_spec);
                    candidates.push_back(lam("x0", body));
                }
                filter_members(A, candidates, pool);
                break;
            }
            default:
                break;
        }
        if (pool.members.size() > pool_cap) {
            pool.members.resize(pool_cap);
            pool.truncated = true;
        }
        return pool;
    }

    // Keeps the candidates that actually inhabit A, deduplicated by
    // rendering; order of first appearance is preserved.
    void filter_members(const term_ptr& A, const std::vector<term_ptr>& candidates,
                        member_pool& pool) const {
        std::set<std::string> seen;
        checker sub = deeper();
        for (const auto& cand : candidates) {
            if (pool.members.size() >= pool_cap) {
                pool.truncated = true;
                break;
            }
            std::string key = print(cand);
            if (!seen.insert(key).second) continue;
            verdict v = sub.term_eq(cand, cand, A);
            if (v.holds()) pool.members.push_back(cand);
        }
    }

    // --- the equality explanations --------------------------------------

    verdict type_eq(const term_ptr& A, const term_ptr& B) const {
        verdict v;
        v.judgment = show(judgment::type_eq(A, B));
        if (too_deep(v)) return v;
        eval_outcome ea = evaluate(A), eb = evaluate(B);
        if (ea.s == eval_outcome::st::fuel || eb.s == eval_outcome::st::fuel) {
            v.st = verdict::state::unknown;
            v.note("fuel exhausted while evaluating to a canonical type");
            return v;
        }
        if (ea.s == eval_outcome::st::stuck || eb.s == eval_outcome::st::stuck) {
            v.st = verdict::state::fails;
            const term_ptr& bad = ea.s == eval_outcome::st::stuck ? A : B;
            v.note(print(bad) + " is stuck and does not evaluate to a canonical type");
            return v;
        }
        add_evidence(v, "eval " + print(A) + " expect " + print(ea.v));
        add_evidence(v, "eval " + print(B) + " expect " + print(eb.v));
        if (!is_canonical_type(ea.v) || !is_canonical_type(eb.v)) {
            v.st = verdict::state::fails;
            const term_ptr& bad = !is_canonical_type(ea.v) ? ea.v : eb.v;
            v.note(print(bad) + " is not a canonical type");
            return v;
        }
        if (ea.v->kind != eb.v->kind) {
            v.st = verdict::state::fails;
            v.note("canonical type heads differ: " + head_name(ea.v) + " vs " + head_name(eb.v));
            return v;
        }
        switch (ea.v->kind) {
            case term_kind::nat:
                v.st = verdict::state::holds;
                return v;
            case term_kind::eq: {
                checker sub = deeper();
                verdict ty = sub.type_eq(ea.v->a, eb.v->a);
                verdict lhs = sub.term_eq(ea.v->b, eb.v->b, ea.v->a);
                verdict rhs = sub.term_eq(ea.v->c, eb.v->c, ea.v->a);
                merge_all(v, {&ty, &lhs, &rhs});
                return v;
            }
            case term_kind::pi: {
                checker sub = deeper();
                verdict dom = sub.type_eq(ea.v->a, eb.v->a);
                if (!dom.holds()) {
                    merge_all(v, {&dom});
                    if (v.fails()) v.note("domains are not equal types");
                    return v;
                }
                v.instances += dom.instances;
                member_pool pool = gen_members(ea.v->a);
                if (!pool_usable(pool, v)) return v;
                if (pool.members.empty()) {
                    v.st = verdict::state::holds;
                    v.note("vacuous: no closed instances of " + print(ea.v->a) +
                           " within size bound");
                    return v;
                }
                bool saw_unknown = false;
                for (const auto& u : pool.members) {
                    verdict body = sub.type_eq(substitute(ea.v->b, ea.v->name, u),
                                               substitute(eb.v->b, eb.v->name, u));
                    ++v.instances;
                    v.instances += body.instances;
                    if (body.fails()) {
                        v.st = verdict::state::fails;
                        v.note("codomains differ at instance " + ea.v->name + " := " + print(u));
                        for (auto& n : body.notes) v.note(n);
                        add_evidence(v, body_replay(body));
                        return v;
                    }
                    if (body.unknown()) saw_unknown = true;
                }
                if (saw_unknown) {
                    v.st = verdict::state::unknown;
                    v.note("some codomain instances undecided within budget");
                } else {
                    v.st = verdict::state::holds;
                    bounded_note(v, pool);
                }
                return v;
            }
            default:
                v.st = verdict::state::fails;
                return v;
        }
    }

    verdict term_eq(const term_ptr& a, const term_ptr& b, const term_ptr& A) const {
        verdict v;
        v.judgment = show(judgment::term_eq(a, b, A));
        if (too_deep(v)) return v;
        eval_outcome ty = evaluate(A);
        if (ty.s == eval_outcome::st::fuel) {
            v.st = verdict::state::unknown;
            v.note("fuel exhausted evaluating the type " + print(A));
            return v;
        }
        if (ty.s == eval_outcome::st::stuck || !is_canonical_type(ty.v))
            throw not_canonical_type("'" + print(A) + "' does not evaluate to a canonical type");

        eval_outcome ea = evaluate(a), eb = evaluate(b);
        if (ea.s == eval_outcome::st::fuel || eb.s == eval_outcome::st::fuel) {
            v.st = verdict::state::unknown;
            v.note("fuel exhausted after " + std::to_string(bgt.fuel) + " step(s) evaluating " +
                   print(ea.s == eval_outcome::st::fuel ? a : b));
            return v;
        }
        if (ea.s == eval_outcome::st::stuck || eb.s == eval_outcome::st::stuck) {
            v.st = verdict::state::fails;
            v.note(print(ea.s == eval_outcome::st::stuck ? a : b) +
                   " is stuck and never reaches a canonical term");
            return v;
        }
        add_evidence(v, "eval " + print(a) + " expect " + print(ea.v));
        add_evidence(v, "eval " + print(b) + " expect " + print(eb.v));

        switch (ty.v->kind) {
            case term_kind::nat: {
                bool az = ea.v->kind == term_kind::zero, bz = eb.v->kind == term_kind::zero;
                bool as = ea.v->kind == term_kind::succ, bs = eb.v->kind == term_kind::succ;
                if (az && bz) {
                    v.st = verdict::state::holds;
                    return v;
                }
                if (as && bs) {
                    checker sub = deeper();
                    verdict arg = sub.term_eq(ea.v->a, eb.v->a, nat());
                    merge_all(v, {&arg});
                    return v;
                }
                v.st = verdict::state::fails;
                if ((az || as) && (bz || bs))
                    v.note("canonical heads differ at Nat: " + head_name(ea.v) + " vs " +
                           head_name(eb.v));
                else
                    v.note(head_name((az || as) ? eb.v : ea.v) +
                           " is not a canonical natural number");
                return v;
            }
            case term_kind::eq: {
                if (ea.v->kind != term_kind::refl || eb.v->kind != term_kind::refl) {
                    v.st = verdict::state::fails;
                    v.note("a canonical member of an equality type must be refl-headed; got " +
                           head_name(ea.v->kind != term_kind::refl ? ea.v : eb.v));
                    return v;
                }
                const term_ptr& base = ty.v->a;
                checker sub = deeper();
                verdict left = sub.term_eq(ea.v->a, ty.v->b, base);
                verdict right = sub.term_eq(eb.v->a, ty.v->c, base);
                verdict ends = sub.term_eq(ty.v->b, ty.v->c, base);
                merge_all(v, {&left, &right, &ends});
                if (v.fails()) v.note("refl argument/endpoint mismatch at " + print(ty.v));
                return v;
            }
            case term_kind::pi: {
                if (ea.v->kind != term_kind::lam || eb.v->kind != term_kind::lam) {
                    v.st = verdict::state::fails;
                    v.note("a canonical member of a function type must be a lambda; got " +
                           head_name(ea.v->kind != term_kind::lam ? ea.v : eb.v));
                    return v;
                }
                member_pool pool = gen_members(ty.v->a);
                if (!pool_usable(pool, v)) return v;
                if (pool.members.empty()) {
                    v.st = verdict::state::holds;
                    v.note("vacuous: no closed instances of " + print(ty.v->a) +
                           " within size bound");
                    return v;
                }
                checker sub = deeper();
                bool saw_unknown = false;
                for (const auto& u : pool.members) {
                    verdict inst = sub.term_eq(substitute(ea.v->a, ea.v->name, u),
                                               substitute(eb.v->a, eb.v->name, u),
                                               substitute(ty.v->b, ty.v->name, u));
                    ++v.instances;
                    v.instances += inst.instances;
                    if (inst.fails()) {
                        v.st = verdict::state::fails;
                        v.note("bodies differ at instance " + ty.v->name + " := " + print(u));
                        for (auto& n : inst.notes) v.note(n);
                        add_evidence(v, body_replay(inst));
                        return v;
                    }
                    if (inst.unknown()) saw_unknown = true;
                }
                if (saw_unknown) {
                    v.st = verdict::state::unknown;
                    v.note("some instances undecided within budget");
                } else {
                    v.st = verdict::state::holds;
                    bounded_note(v, pool);
                }
                return v;
            }
            default:
                v.st = verdict::state::fails;
                return v;
        }
    }

    // --- helpers ---------------------------------------------------------

    static std::string head_name(const term_ptr& v) {
        switch (v->kind) {
            case term_kind::pi: return "a function type";
            case term_kind::eq: return "an equality type";
            case term_kind::nat: return "Nat";
            case term_kind::zero: return "zero";
            case term_kind::succ: return "succ";
            case term_kind::refl: return "refl";
            case term_kind::lam: return "a lambda";
            default: return print(v);
        }
    }

    static std::string body_replay(const verdict& sub) {
        return "# sub-check: " + sub.judgment + " -> " + sub.word();
    }

    bool pool_usable(const member_pool& pool, verdict& v) const {
        switch (pool.st) {
            case member_pool::status::ok:
                return true;
            case member_pool::status::fuel_exhausted:
            case member_pool::status::depth:
                v.st = verdict::state::unknown;
                v.note(pool.detail);
                return false;
            case member_pool::status::not_a_type:
                throw not_canonical_type(pool.detail);
        }
        return false;
    }

    void bounded_note(verdict& v, const member_pool& pool) const {
        std::string n = "bounded validation: " + std::to_string(pool.members.size()) +
                        " instance(s), size <= " + std::to_string(bgt.instance_size) +
                        ", samples " + std::to_string(bgt.samples);
        if (pool.truncated) n += " (pool truncated)";
        v.note(std::move(n));
    }

    // Deterministic merge: first Fails wins, otherwise any Unknown,
    // otherwise Holds.
    static void merge_all(verdict& v, std::initializer_list<const verdict*> subs) {
        v.st = verdict::state::holds;
        for (const verdict* s : subs) {
            v.instances += s->instances;
            for (const auto& ev : s->evidence)
                if (ev.rfind("# sub", 0) != 0) add_evidence(v, ev);
        }
        for (const verdict* s : subs) {
            if (s->fails()) {
                v.st = verdict::state::fails;
                for (const auto& n : s->notes) v.note(n);
                return;
            }
        }
        for (const verdict* s : subs) {
            if (s->unknown()) {
                v.st = verdict::state::unknown;
                for (const auto& n : s->notes) v.note(n);
                return;
            }
        }
    }
};

}  // namespace detail

// A == B type: both sides must evaluate to matching canonical types whose
// components are equal (hypothetically so for Pi codomains).
inline verdict check_type_eq(const term_ptr& A, const term_ptr& B, const env& e,
                             const budget& b = {}) {
    return detail::checker{e, b}.type_eq(A, B);
}

// a == b : A per the canonical-type-directed explanation of term equality.
inline verdict check_term_eq(const term_ptr& a, const term_ptr& b, const term_ptr& A, const env& e,
                             const budget& bgt = {}) {
    return detail::checker{e, bgt}.term_eq(a, b, A);
}

// a : A is the reflexive instance a == a : A.
inline verdict check_member(const term_ptr& a, const term_ptr& A, const env& e,
                            const budget& bgt = {}) {
    verdict v = detail::checker{e, bgt}.term_eq(a, a, A);
    v.judgment = show(judgment::member(a, A));
    return v;
}

inline member_pool generate_members(const term_ptr& A, const env& e, const budget& bgt = {}) {
    return detail::checker{e, bgt}.gen_members(A);
}

inline verdict check_judgment(const judgment& j, const env& e, const budget& bgt = {}) {
    switch (j.f) {
        case judgment::form::type_eq:
            return check_type_eq(j.t1, j.t2, e, bgt);
        case judgment::form::term_eq:
            return check_term_eq(j.t1, j.t2, j.ty, e, bgt);
        case judgment::form::is_type: {
            verdict v = check_type_eq(j.t1, j.t1, e, bgt);
            v.judgment = show(j);
            return v;
        }
        case judgment::form::member:
            return check_member(j.t1, j.ty, e, bgt);
    }
    throw error("unreachable judgment form");
}

namespace detail {

inline judgment substitute_judgment(const judgment& j, const std::string& x, const term_ptr& u) {
    judgment out = j;
    if (out.t1) out.t1 = substitute(out.t1, x, u);
    if (out.t2) out.t2 = substitute(out.t2, x, u);
    if (out.ty) out.ty = substitute(out.ty, x, u);
    return out;
}

}  // namespace detail

// Hypothetical judgments: valid iff every closed-instance substitution
// validates the categorical judgment. Instances are generated per hypothesis
// (telescoped left to right); the result is always a bounded validation.
inline verdict check_hypothetical(const context& ctx, const judgment& j, const env& e,
                                  const budget& bgt = {}) {
    // scope discipline: each hypothesis type sees only earlier variables
    std::set<std::string> in_scope;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        for (const auto& fv : free_vars(ctx[i].type))
            if (!in_scope.count(fv))
                throw scope_error("hypothesis type for '" + ctx[i].name +
                                  "' mentions unbound variable '" + fv + "'");
        if (in_scope.count(ctx[i].name))
            throw scope_error("duplicate hypothesis name '" + ctx[i].name + "'");
        in_scope.insert(ctx[i].name);
    }
    auto check_scope = [&](const term_ptr& t) {
        if (!t) return;
        for (const auto& fv : free_vars(t))
            if (!in_scope.count(fv))
                throw scope_error("judgment mentions unbound variable '" + fv + "'");
    };
    check_scope(j.t1);
    check_scope(j.t2);
    check_scope(j.ty);

    verdict v;
    v.judgment = show(ctx, j);
    bool open_sides = (j.t1 && !free_vars(j.t1).empty()) || (j.t2 && !free_vars(j.t2).empty());

    detail::checker chk{e, bgt};
    long long checked = 0;
    bool saw_unknown = false;
    bool truncated = false;
    bool vacuous = false;
    std::set<std::string> vacuous_noted;

    // Pools for syntactically identical hypothesis types are reused across
    // branches of the instance product.
    std::map<std::string, member_pool> pool_cache;
    auto pool_for = [&](const term_ptr& ty) -> const member_pool& {
        std::string key = print(ty);
        auto it = pool_cache.find(key);
        if (it == pool_cache.end()) it = pool_cache.emplace(key, chk.gen_members(ty)).first;
        return it->second;
    };

    // Depth-first product of per-hypothesis instance pools.
    std::function<bool(std::size_t, std::vector<std::pair<std::string, term_ptr>>&, const judgment&,
                       std::vector<hypothesis>)>
        walk = [&](std::size_t i, std::vector<std::pair<std::string, term_ptr>>& chosen,
                   const judgment& inst_j, std::vector<hypothesis> rest) -> bool {
        if (checked >= detail::hypothetical_cap) {
            truncated = true;
            return false;
        }
        if (i == rest.size()) {
            verdict c = check_judgment(inst_j, e, bgt);
            ++checked;
            if (c.fails()) {
                v.st = verdict::state::fails;
                std::string inst = "instance";
                for (const auto& [n, u] : chosen) inst += " " + n + " := " + print(u) + ";";
                v.note(inst);
                for (const auto& n : c.notes) v.note(n);
                detail::add_evidence(v, replay_command(inst_j) + " expect FAILS");
                return false;
            }
            if (c.unknown()) saw_unknown = true;
            if (v.evidence.size() < 8)
                detail::add_evidence(v, replay_command(inst_j) + " expect " + c.word());
            return true;
        }
        member_pool pool = pool_for(rest[i].type);
        if (pool.st == member_pool::status::not_a_type) throw not_canonical_type(pool.detail);
        if (pool.st != member_pool::status::ok) {
            saw_unknown = true;
            v.note(pool.detail);
            return true;
        }
        if (pool.members.empty()) {
            vacuous = true;
            if (vacuous_noted.insert(rest[i].name).second)
                v.note("vacuous branch(es): no closed instances for " + rest[i].name + " : " +
                       print(rest[i].type) + " within bound");
            return true;
        }
        for (const auto& u : pool.members) {
            chosen.emplace_back(rest[i].name, u);
            judgment next_j = detail::substitute_judgment(inst_j, rest[i].name, u);
            std::vector<hypothesis> next_rest = rest;
            for (std::size_t k = i + 1; k < next_rest.size(); ++k)
                next_rest[k].type = substitute(next_rest[k].type, rest[i].name, u);
            bool keep = walk(i + 1, chosen, next_j, next_rest);
            chosen.pop_back();
            if (!keep) return false;
        }
        return true;
    };

    std::vector<std::pair<std::string, term_ptr>> chosen;
    std::vector<hypothesis> hyps(ctx.begin(), ctx.end());
    walk(0, chosen, j, hyps);

    v.instances = checked;
    if (v.fails()) return v;
    if (saw_unknown) {
        v.st = verdict::state::unknown;
        v.note("checked " + std::to_string(checked) + " instance(s); some undecided");
        return v;
    }
    v.st = verdict::state::holds;
    std::string n = "bounded validation over " + std::to_string(checked) +
                    " closed instance(s) (size <= " + std::to_string(bgt.instance_size) +
                    ", samples " + std::to_string(bgt.samples) + " per hypothesis); not a proof";
    if (truncated) n += "; instance product truncated";
    v.note(std::move(n));
    if (vacuous && checked == 0) v.note("vacuously valid: a hypothesis has no closed instances");
    if (open_sides && (j.f == judgment::form::term_eq || j.f == judgment::form::member))
        v.note("no evaluation step applies at the open level; validated instance-by-instance only");
    return v;
}

// Reflection: a proof of an equality type forces the judgmental equality of
// its endpoints. Fails(precondition) when p is not such a proof.
inline verdict check_reflection(const term_ptr& p, const term_ptr& a, const term_ptr& b,
                                const term_ptr& A, const env& e, const budget& bgt = {}) {
    term_ptr ty = eq(A, a, b);
    verdict m = check_member(p, ty, e, bgt);
    verdict v;
    v.judgment = "reflection: " + show(judgment::member(p, ty)) + " => " +
                 show(judgment::term_eq(a, b, A));
    v.instances = m.instances;
    if (m.fails()) {
        v.st = verdict::state::fails;
        v.note("precondition failed: " + show(judgment::member(p, ty)) + " does not hold");
        for (const auto& n : m.notes) v.note(n);
        return v;
    }
    if (m.unknown()) {
        v.st = verdict::state::unknown;
        v.note("membership undecided within budget");
        return v;
    }
    verdict c = check_term_eq(a, b, A, e, bgt);
    v.instances += c.instances;
    v.evidence = c.evidence;
    if (c.holds()) {
        v.st = verdict::state::holds;
        v.note("propositional equality reflected into judgmental equality");
    } else if (c.fails()) {
        v.st = verdict::state::fails;
        v.note("REFLECTION VIOLATION: membership holds but endpoints differ judgmentally");
    } else {
        v.st = verdict::state::unknown;
        v.note("conclusion undecided within budget");
    }
    return v;
}

// Strong uniqueness of equality proofs: every enumerated closed proof of
// a == a evaluates refl-headed with an argument judgmentally equal to a.
inline verdict check_axiom_k(const term_ptr& A, const term_ptr& a, const env& e,
                             const budget& bgt = {}) {
    verdict v;
    term_ptr ty = eq(A, a, a);
    v.judgment = "K at " + print(ty);
    verdict pre = check_member(a, A, e, bgt);
    if (!pre.holds()) {
        v.st = pre.fails() ? verdict::state::fails : verdict::state::unknown;
        v.note("precondition " + show(judgment::member(a, A)) + ": " + pre.word());
        return v;
    }
    enum_spec spec;
    spec.max_size = bgt.instance_size;
    long long proofs = 0;
    bool violation = false;
    enumerate_closed(spec, [&](const term_ptr& p) {
        eval_result ev = eval(p, e, bgt.fuel);
        if (!ev.evaluated() || ev.t->kind != term_kind::refl) return true;  // cannot be a member
        verdict m = check_member(p, ty, e, bgt);
        if (!m.holds()) return true;
        ++proofs;
        verdict body = check_term_eq(ev.t->a, a, A, e, bgt);
        if (!body.holds()) {
            violation = true;
            v.st = verdict::state::fails;
            v.note("violation: " + print(p) + " evaluates to " + print(ev.t) +
                   " whose argument is not judgmentally equal to " + print(a));
            detail::add_evidence(v, "eval " + print(p) + " expect " + print(ev.t));
            return false;
        }
        if (v.evidence.size() < 8)
            detail::add_evidence(v, "member " + print(p) + " " + print(ty) + " expect HOLDS");
        return true;
    });
    if (violation) return v;
    v.st = verdict::state::holds;
    v.instances = proofs;
    v.note(std::to_string(proofs) + " closed proof(s) of size <= " +
           std::to_string(bgt.instance_size) +
           " checked; every one evaluates refl-headed with argument equal to " + print(a));
    return v;
}

// Bounded coextensionality (the optional rule that a type is determined by
// its terms). Reports alongside it whether intensional type equality already
// holds.
inline verdict check_unique_by_terms(const term_ptr& A, const term_ptr& B, const env& e,
                                     const budget& bgt = {}) {
    verdict v;
    v.judgment = "members(" + print(A) + ") == members(" + print(B) + ")";
    detail::checker chk{e, bgt};
    member_pool pa = chk.gen_members(A);
    member_pool pb = chk.gen_members(B);
    for (const member_pool* p : {&pa, &pb}) {
        if (p->st == member_pool::status::not_a_type) throw not_canonical_type(p->detail);
        if (p->st != member_pool::status::ok) {
            v.st = verdict::state::unknown;
            v.note(p->detail);
            return v;
        }
    }
    bool saw_unknown = false;
    auto one_way = [&](const member_pool& from, const term_ptr& src, const term_ptr& dst) {
        for (const auto& m : from.members) {
            verdict mm = check_member(m, dst, e, bgt);
            ++v.instances;
            if (mm.fails()) {
                v.st = verdict::state::fails;
                v.note("witness: " + print(m) + " inhabits " + print(src) + " but not " +
                       print(dst));
                detail::add_evidence(v, "member " + print(m) + " " + print(dst) + " expect FAILS");
                return false;
            }
            if (mm.unknown()) saw_unknown = true;
        }
        return true;
    };
    if (one_way(pa, A, B) && one_way(pb, B, A)) {
        if (saw_unknown) {
            v.st = verdict::state::unknown;
            v.note("some membership transfers undecided within budget");
        } else {
            v.st = verdict::state::holds;
            v.note("bounded coextensionality: " + std::to_string(pa.members.size()) + "+" +
                   std::to_string(pb.members.size()) + " member(s) transfer both ways (size <= " +
                   std::to_string(bgt.instance_size) + "); not a proof");
        }
    }
    verdict intensional = check_type_eq(A, B, e, bgt);
    v.note(std::string("intensional type equality: ") + intensional.word());
    return v;
}

}  // namespace senseref

#endif
