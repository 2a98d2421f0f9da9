#ifndef SENSEREF_PRINTER_HPP
#define SENSEREF_PRINTER_HPP

#include <string>

#include "senseref/term.hpp"

namespace senseref {

namespace detail {

inline void print_rec(const term_ptr& t, std::string& out) {
    switch (t->kind) {
        case term_kind::var:
        case term_kind::defref:
            out += t->name;
            return;
        case term_kind::nat:
            out += "Nat";
            return;
        case term_kind::zero:
            out += "zero";
            return;
        case term_kind::succ:
            out += "succ(";
            print_rec(t->a, out);
            out += ')';
            return;
        case term_kind::refl:
            out += "refl(";
            print_rec(t->a, out);
            out += ')';
            return;
        case term_kind::eqrec:
            out += "eqrec(";
            print_rec(t->a, out);
            out += ", ";
            print_rec(t->b, out);
            out += ')';
            return;
        case term_kind::natrec:
            out += "natrec(";
            print_rec(t->a, out);
            out += ", ";
            print_rec(t->b, out);
            out += ", ";
            print_rec(t->c, out);
            out += ')';
            return;
        case term_kind::eq:
            out += "Eq(";
            print_rec(t->a, out);
            out += ", ";
            print_rec(t->b, out);
            out += ", ";
            print_rec(t->c, out);
            out += ')';
            return;
        case term_kind::pi:
            out += '(';
            out += t->name;
            out += " : ";
            print_rec(t->a, out);
            out += ") -> ";
            print_rec(t->b, out);
            return;
        case term_kind::lam:
            out += '\\';
            out += t->name;
            out += ". ";
            print_rec(t->a, out);
            return;
        case term_kind::app: {
            // A lambda or Pi in function position needs parentheses; every
            // other head form is self-delimiting.
            bool wrap = t->a->kind == term_kind::lam || t->a->kind == term_kind::pi;
            if (wrap) out += '(';
            print_rec(t->a, out);
            if (wrap) out += ')';
            out += '(';
            print_rec(t->b, out);
            out += ')';
            return;
        }
    }
}

}  // namespace detail

// Canonical rendering; parse(print(t)) is alpha-equal to t.
inline std::string print(const term_ptr& t) {
    std::string out;
    detail::print_rec(t, out);
    return out;
}

}  // namespace senseref

#endif
