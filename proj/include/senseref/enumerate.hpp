#ifndef SENSEREF_ENUMERATE_HPP
#define SENSEREF_ENUMERATE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "senseref/term.hpp"

namespace senseref {

// Exhaustive closed-term enumeration, duplicate-free up to alpha-equivalence:
// binders are named canonically by depth (x0, x1, ...), so each alpha-class
// is produced exactly once. Order is deterministic: ascending size, then
// constructor declaration order, then child sizes lexicographically.
struct enum_spec {
    int max_size = 7;
    // Non-variable constructors to draw from; variables are always available
    // under binders. DefRefs are never enumerated.
    std::vector<term_kind> constructors = {
        term_kind::pi,    term_kind::lam,  term_kind::app,  term_kind::eq,
        term_kind::refl,  term_kind::eqrec, term_kind::nat, term_kind::zero,
        term_kind::succ,  term_kind::natrec,
    };
    std::uint64_t seed = 0;
};

namespace detail {

struct enum_state {
    std::array<bool, 12> allowed{};
    std::vector<std::string> names;  // canonical binder names by depth

    const std::string& name_at(std::size_t depth) {
        while (names.size() <= depth) names.push_back("x" + std::to_string(names.size()));
        return names[depth];
    }
};

// Yields every term of exactly `size` nodes with `depth` binders in scope.
// The sink returns false to abort the whole enumeration.
inline bool enum_exact(enum_state& st, int size, int depth,
                       const std::function<bool(const term_ptr&)>& sink) {
    if (size < 1) return true;
    auto on = [&](term_kind k) { return st.allowed[static_cast<std::size_t>(k)]; };

    if (size == 1) {
        for (int i = 0; i < depth; ++i)
            if (!sink(var(st.name_at(static_cast<std::size_t>(i))))) return false;
        if (on(term_kind::nat) && !sink(nat())) return false;
        if (on(term_kind::zero) && !sink(zero())) return false;
        return true;
    }

    bool run = true;
    auto unary = [&](term_kind k, auto build) {
        if (!run || !on(k)) return;
        run = enum_exact(st, size - 1, depth, [&](const term_ptr& a) { return sink(build(a)); });
    };
    auto binder_unary = [&](term_kind k, auto build) {
        if (!run || !on(k)) return;
        run = enum_exact(st, size - 1, depth + 1,
                         [&](const term_ptr& a) { return sink(build(st.name_at(depth), a)); });
    };
    auto binary = [&](term_kind k, auto build, bool binds_second) {
        if (!run || !on(k)) return;
        for (int i = 1; run && i <= size - 2; ++i) {
            run = enum_exact(st, i, depth, [&](const term_ptr& a) {
                return enum_exact(st, size - 1 - i, depth + (binds_second ? 1 : 0),
                                  [&](const term_ptr& b) { return sink(build(a, b)); });
            });
        }
    };
    auto ternary = [&](term_kind k, auto build) {
        if (!run || !on(k)) return;
        for (int i = 1; run && i <= size - 3; ++i) {
            for (int j = 1; run && j <= size - 2 - i; ++j) {
                int l = size - 1 - i - j;
                run = enum_exact(st, i, depth, [&](const term_ptr& a) {
                    return enum_exact(st, j, depth, [&](const term_ptr& b) {
                        return enum_exact(st, l, depth,
                                          [&](const term_ptr& c) { return sink(build(a, b, c)); });
                    });
                });
            }
        }
    };

    binary(term_kind::pi,
           [&](const term_ptr& a, const term_ptr& b) { return pi(st.name_at(depth), a, b); }, true);
    binder_unary(term_kind::lam, [](const std::string& n, const term_ptr& a) { return lam(n, a); });
    binary(term_kind::app, [](const term_ptr& a, const term_ptr& b) { return app(a, b); }, false);
    ternary(term_kind::eq,
            [](const term_ptr& a, const term_ptr& b, const term_ptr& c) { return eq(a, b, c); });
    unary(term_kind::refl, [](const term_ptr& a) { return refl(a); });
    binary(term_kind::eqrec, [](const term_ptr& a, const term_ptr& b) { return eqrec(a, b); },
           false);
    unary(term_kind::succ, [](const term_ptr& a) { return succ(a); });
    ternary(term_kind::natrec, [](const term_ptr& a, const term_ptr& b, const term_ptr& c) {
        return natrec(a, b, c);
    });
    return run;
}

}  // namespace detail

// Streams every closed term of size <= spec.max_size; returns false if the
// sink aborted. `initial_scope` > 0 enumerates open terms over the canonical
// variables x0..x{initial_scope-1} (used for function bodies).
inline bool enumerate_closed(const enum_spec& spec,
                             const std::function<bool(const term_ptr&)>& sink,
                             int initial_scope = 0) {
    detail::enum_state st;
    for (term_kind k : spec.constructors) st.allowed[static_cast<std::size_t>(k)] = true;
    st.allowed[static_cast<std::size_t>(term_kind::var)] = true;
    for (int s = 1; s <= spec.max_size; ++s)
        if (!detail::enum_exact(st, s, initial_scope, sink)) return false;
    return true;
}

inline std::vector<term_ptr> enumerate_closed_all(const enum_spec& spec, int initial_scope = 0) {
    std::vector<term_ptr> out;
    enumerate_closed(spec, [&](const term_ptr& t) {
        out.push_back(t);
        return true;
    }, initial_scope);
    return out;
}

inline std::uint64_t count_closed(const enum_spec& spec, int initial_scope = 0) {
    std::uint64_t n = 0;
    enumerate_closed(spec, [&](const term_ptr&) {
        ++n;
        return true;
    }, initial_scope);
    return n;
}

// Random term over the same constructor pool, at most `size_budget` nodes.
// Used for sampled round-trip corpora and randomized instance generation.
inline term_ptr random_term(std::mt19937_64& rng, int size_budget, int depth,
                            const enum_spec& spec) {
    std::vector<term_kind> options;
    for (term_kind k : spec.constructors) {
        int need = 1;
        switch (k) {
            case term_kind::nat:
            case term_kind::zero: need = 1; break;
            case term_kind::lam:
            case term_kind::refl:
            case term_kind::succ: need = 2; break;
            case term_kind::pi:
            case term_kind::app:
            case term_kind::eqrec: need = 3; break;
            default: need = 4; break;
        }
        if (size_budget >= need) options.push_back(k);
    }
    if (depth > 0 && rng() % 4 == 0) {
        return var("x" + std::to_string(rng() % static_cast<std::uint64_t>(depth)));
    }
    if (options.empty()) {
        if (depth > 0) return var("x" + std::to_string(rng() % static_cast<std::uint64_t>(depth)));
        return zero();
    }
    term_kind k = options[rng() % options.size()];
    auto split2 = [&](int total, int& a, int& b) {
        a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(total - 1));
        b = total - a;
    };
    std::string binder = "x" + std::to_string(depth);
    switch (k) {
        case term_kind::nat: return nat();
        case term_kind::zero: return zero();
        case term_kind::succ: return succ(random_term(rng, size_budget - 1, depth, spec));
        case term_kind::refl: return refl(random_term(rng, size_budget - 1, depth, spec));
        case term_kind::lam: return lam(binder, random_term(rng, size_budget - 1, depth + 1, spec));
        case term_kind::pi: {
            int a, b;
            split2(size_budget - 1, a, b);
            return pi(binder, random_term(rng, a, depth, spec),
                      random_term(rng, b, depth + 1, spec));
        }
        case term_kind::app: {
            int a, b;
            split2(size_budget - 1, a, b);
            return app(random_term(rng, a, depth, spec), random_term(rng, b, depth, spec));
        }
        case term_kind::eqrec: {
            int a, b;
            split2(size_budget - 1, a, b);
            return eqrec(random_term(rng, a, depth, spec), random_term(rng, b, depth, spec));
        }
        case term_kind::eq:
        case term_kind::natrec: {
            int rest = size_budget - 1;
            int a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rest - 2));
            int b = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rest - a - 1));
            int c = rest - a - b;
            term_ptr ta = random_term(rng, a, depth, spec);
            term_ptr tb = random_term(rng, b, depth, spec);
            term_ptr tc = random_term(rng, c, depth, spec);
            return k == term_kind::eq ? eq(ta, tb, tc) : natrec(ta, tb, tc);
        }
        default: return zero();
    }
}

}  // namespace senseref

#endif
