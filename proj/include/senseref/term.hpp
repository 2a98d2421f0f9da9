#ifndef SENSEREF_TERM_HPP
#define SENSEREF_TERM_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "senseref/errors.hpp"

namespace senseref {

// Constructor order is load-bearing: enumeration order and pattern switches
// follow the declaration order below.
enum class term_kind {
    var,
    pi,
    lam,
    app,
    eq,
    refl,
    eqrec,
    nat,
    zero,
    succ,
    natrec,
    defref,
};

struct term;
using term_ptr = std::shared_ptr<const term>;

// Immutable syntax tree node. Subterms are shared freely; nothing mutates a
// term after construction, so terms are safe to use across threads.
//
// Child slots by kind:
//   var     name
//   pi      name = binder, a = domain, b = body
//   lam     name = binder, a = body
//   app     a = function, b = argument
//   eq      a = type, b = lhs, c = rhs
//   refl    a = argument
//   eqrec   a = scrutinee, b = branch
//   succ    a = argument
//   natrec  a = scrutinee, b = base, c = step
//   defref  name
struct term {
    term_kind kind;
    std::string name;
    term_ptr a, b, c;
};

inline term_ptr make_term(term_kind k, std::string name = {}, term_ptr a = nullptr,
                          term_ptr b = nullptr, term_ptr c = nullptr) {
    return std::make_shared<const term>(term{k, std::move(name), std::move(a), std::move(b), std::move(c)});
}

inline term_ptr var(std::string name) { return make_term(term_kind::var, std::move(name)); }
inline term_ptr pi(std::string binder, term_ptr domain, term_ptr body) {
    return make_term(term_kind::pi, std::move(binder), std::move(domain), std::move(body));
}
inline term_ptr lam(std::string binder, term_ptr body) {
    return make_term(term_kind::lam, std::move(binder), std::move(body));
}
inline term_ptr app(term_ptr fn, term_ptr arg) {
    return make_term(term_kind::app, {}, std::move(fn), std::move(arg));
}
inline term_ptr eq(term_ptr type, term_ptr lhs, term_ptr rhs) {
    return make_term(term_kind::eq, {}, std::move(type), std::move(lhs), std::move(rhs));
}
inline term_ptr refl(term_ptr arg) { return make_term(term_kind::refl, {}, std::move(arg)); }
inline term_ptr eqrec(term_ptr scrutinee, term_ptr branch) {
    return make_term(term_kind::eqrec, {}, std::move(scrutinee), std::move(branch));
}

inline const term_ptr& nat() {
    static const term_ptr t = make_term(term_kind::nat);
    return t;
}
inline const term_ptr& zero() {
    static const term_ptr t = make_term(term_kind::zero);
    return t;
}
inline term_ptr succ(term_ptr arg) { return make_term(term_kind::succ, {}, std::move(arg)); }
inline term_ptr natrec(term_ptr scrutinee, term_ptr base, term_ptr step) {
    return make_term(term_kind::natrec, {}, std::move(scrutinee), std::move(base), std::move(step));
}
inline term_ptr defref(std::string name) { return make_term(term_kind::defref, std::move(name)); }

// Iterated succ over zero; the surface syntax has decimal literals but the
// tree never stores numbers.
inline term_ptr numeral(std::uint64_t n) {
    term_ptr t = zero();
    for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
    return t;
}

// Reads back an exact numeral (succ^n(zero)); false if any layer is not a
// literal succ/zero constructor.
inline bool as_numeral(const term_ptr& t, std::uint64_t& out) {
    std::uint64_t n = 0;
    const term* cur = t.get();
    while (cur->kind == term_kind::succ) {
        ++n;
        cur = cur->a.get();
    }
    if (cur->kind != term_kind::zero) return false;
    out = n;
    return true;
}

inline int node_count(const term_ptr& t) {
    switch (t->kind) {
        case term_kind::var:
        case term_kind::nat:
        case term_kind::zero:
        case term_kind::defref:
            return 1;
        case term_kind::lam:
        case term_kind::refl:
        case term_kind::succ:
            return 1 + node_count(t->a);
        case term_kind::pi:
        case term_kind::app:
        case term_kind::eqrec:
            return 1 + node_count(t->a) + node_count(t->b);
        case term_kind::eq:
        case term_kind::natrec:
            return 1 + node_count(t->a) + node_count(t->b) + node_count(t->c);
    }
    return 1;
}

namespace detail {

inline void free_vars_rec(const term_ptr& t, std::vector<std::string>& bound,
                          std::set<std::string>& out) {
    switch (t->kind) {
        case term_kind::var: {
            for (auto it = bound.rbegin(); it != bound.rend(); ++it)
                if (*it == t->name) return;
            out.insert(t->name);
            return;
        }
        case term_kind::pi:
            free_vars_rec(t->a, bound, out);
            bound.push_back(t->name);
            free_vars_rec(t->b, bound, out);
            bound.pop_back();
            return;
        case term_kind::lam:
            bound.push_back(t->name);
            free_vars_rec(t->a, bound, out);
            bound.pop_back();
            return;
        default:
            if (t->a) free_vars_rec(t->a, bound, out);
            if (t->b) free_vars_rec(t->b, bound, out);
            if (t->c) free_vars_rec(t->c, bound, out);
            return;
    }
}

}  // namespace detail

// Free variables of t. DefRefs are not variables and never count.
inline std::set<std::string> free_vars(const term_ptr& t) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    detail::free_vars_rec(t, bound, out);
    return out;
}

inline bool occurs_free(const term_ptr& t, const std::string& x) {
    switch (t->kind) {
        case term_kind::var:
            return t->name == x;
        case term_kind::pi:
            return occurs_free(t->a, x) || (t->name != x && occurs_free(t->b, x));
        case term_kind::lam:
            return t->name != x && occurs_free(t->a, x);
        default:
            return (t->a && occurs_free(t->a, x)) || (t->b && occurs_free(t->b, x)) ||
                   (t->c && occurs_free(t->c, x));
    }
}

inline bool is_closed(const term_ptr& t) { return free_vars(t).empty(); }

inline bool has_defref(const term_ptr& t) {
    if (t->kind == term_kind::defref) return true;
    return (t->a && has_defref(t->a)) || (t->b && has_defref(t->b)) || (t->c && has_defref(t->c));
}

namespace detail {

// Bound names are compared positionally; free names literally.
inline bool alpha_eq_rec(const term_ptr& l, const term_ptr& r, std::vector<std::string>& lb,
                         std::vector<std::string>& rb) {
    if (l->kind != r->kind) return false;
    switch (l->kind) {
        case term_kind::var: {
            auto index_of = [](const std::vector<std::string>& stack, const std::string& n) -> long {
                for (std::size_t i = stack.size(); i-- > 0;)
                    if (stack[i] == n) return static_cast<long>(i);
                return -1;
            };
            long li = index_of(lb, l->name);
            long ri = index_of(rb, r->name);
            if (li != ri) return false;
            return li >= 0 || l->name == r->name;
        }
        case term_kind::defref:
            return l->name == r->name;
        case term_kind::pi: {
            if (!alpha_eq_rec(l->a, r->a, lb, rb)) return false;
            lb.push_back(l->name);
            rb.push_back(r->name);
            bool ok = alpha_eq_rec(l->b, r->b, lb, rb);
            lb.pop_back();
            rb.pop_back();
            return ok;
        }
        case term_kind::lam: {
            lb.push_back(l->name);
            rb.push_back(r->name);
            bool ok = alpha_eq_rec(l->a, r->a, lb, rb);
            lb.pop_back();
            rb.pop_back();
            return ok;
        }
        default: {
            if (static_cast<bool>(l->a) != static_cast<bool>(r->a)) return false;
            if (static_cast<bool>(l->b) != static_cast<bool>(r->b)) return false;
            if (static_cast<bool>(l->c) != static_cast<bool>(r->c)) return false;
            if (l->a && !alpha_eq_rec(l->a, r->a, lb, rb)) return false;
            if (l->b && !alpha_eq_rec(l->b, r->b, lb, rb)) return false;
            if (l->c && !alpha_eq_rec(l->c, r->c, lb, rb)) return false;
            return true;
        }
    }
}

}  // namespace detail

inline bool alpha_eq(const term_ptr& l, const term_ptr& r) {
    if (l == r) return true;
    std::vector<std::string> lb, rb;
    return detail::alpha_eq_rec(l, r, lb, rb);
}

// A name based on `base` that avoids every name in `avoid`; primes are
// appended, matching the surface identifier syntax (x, x', x'', ...).
inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string candidate = base;
    while (avoid.count(candidate)) candidate += '\'';
    return candidate;
}

// Capture-avoiding substitution of v for free occurrences of x in body.
// Binders that would capture a free variable of v are renamed first.
inline term_ptr substitute(const term_ptr& body, const std::string& x, const term_ptr& v) {
    if (!occurs_free(body, x)) return body;
    switch (body->kind) {
        case term_kind::var:
            return body->name == x ? v : body;
        case term_kind::pi:
        case term_kind::lam: {
            const bool is_pi = body->kind == term_kind::pi;
            term_ptr domain = is_pi ? substitute(body->a, x, v) : nullptr;
            term_ptr inner = is_pi ? body->b : body->a;
            std::string binder = body->name;
            if (binder == x)  // occurs_free said x is free, so for pi it is in the domain only
                return is_pi ? pi(binder, domain, body->b) : body;
            if (occurs_free(v, binder)) {
                std::set<std::string> avoid = free_vars(v);
                auto inner_free = free_vars(inner);
                avoid.insert(inner_free.begin(), inner_free.end());
                avoid.insert(x);
                std::string renamed = fresh_name(binder, avoid);
                inner = substitute(inner, binder, var(renamed));
                binder = renamed;
            }
            inner = substitute(inner, x, v);
            return is_pi ? pi(binder, domain, inner) : lam(binder, inner);
        }
        case term_kind::app:
            return app(substitute(body->a, x, v), substitute(body->b, x, v));
        case term_kind::eq:
            return eq(substitute(body->a, x, v), substitute(body->b, x, v), substitute(body->c, x, v));
        case term_kind::refl:
            return refl(substitute(body->a, x, v));
        case term_kind::eqrec:
            return eqrec(substitute(body->a, x, v), substitute(body->b, x, v));
        case term_kind::succ:
            return succ(substitute(body->a, x, v));
        case term_kind::natrec:
            return natrec(substitute(body->a, x, v), substitute(body->b, x, v),
                          substitute(body->c, x, v));
        default:
            return body;
    }
}

}  // namespace senseref

#endif
