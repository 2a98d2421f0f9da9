#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "senseref/enumerate.hpp"
#include "senseref/env.hpp"
#include "senseref/parser.hpp"
#include "senseref/printer.hpp"
#include "senseref/term.hpp"

using namespace senseref;

namespace {

term_ptr P(const std::string& src, const env& e) { return parse(src, e); }

term_ptr P(const std::string& src) {
    env e;
    return parse(src, e);
}

}  // namespace

TEST_CASE("parse: the classic application of an identity-like lambda") {
    term_ptr t = P("(\\x. refl(x))(zero)");
    term_ptr want = app(lam("x", refl(var("x"))), zero());
    CHECK(alpha_eq(t, want));
}

TEST_CASE("parse: keywords and literals") {
    CHECK(alpha_eq(P("Nat"), nat()));
    CHECK(alpha_eq(P("zero"), zero()));
    CHECK(alpha_eq(P("2"), succ(succ(zero()))));
    CHECK(alpha_eq(P("0"), zero()));
    std::uint64_t n = 0;
    CHECK(as_numeral(P("12"), n));
    CHECK(n == 12);
    CHECK_FALSE(as_numeral(P("succ(Nat)"), n));
    CHECK(alpha_eq(P("Eq(Nat, zero, zero)"), eq(nat(), zero(), zero())));
    CHECK(alpha_eq(P("succ(zero)"), succ(zero())));
    CHECK(alpha_eq(P("natrec(zero, zero, \\k. \\r. succ(r))"),
                   natrec(zero(), zero(), lam("k", lam("r", succ(var("r")))))));
    CHECK(alpha_eq(P("eqrec(refl(zero), zero)"), eqrec(refl(zero()), zero())));
}

TEST_CASE("parse: fixed arities are enforced") {
    CHECK_THROWS_AS(P("succ(zero, zero)"), arity_error);
    CHECK_THROWS_AS(P("succ()"), arity_error);
    CHECK_THROWS_AS(P("refl(zero, zero)"), arity_error);
    CHECK_THROWS_AS(P("eqrec(zero, zero, zero)"), arity_error);
    CHECK_THROWS_AS(P("natrec(zero, zero)"), arity_error);
    CHECK_THROWS_AS(P("Eq(Nat, zero)"), arity_error);
}

TEST_CASE("parse: dependent function types and the arrow sugar") {
    term_ptr t = P("(x : Nat) -> Nat");
    CHECK(t->kind == term_kind::pi);
    CHECK(alpha_eq(t, pi("x", nat(), nat())));
    // arrow sugar introduces a fresh binder
    CHECK(alpha_eq(P("Nat -> Nat"), pi("q", nat(), nat())));
    // right-associative
    CHECK(alpha_eq(P("Nat -> Nat -> Nat"), pi("a", nat(), pi("b", nat(), nat()))));
    // dependent body sees the binder
    CHECK(alpha_eq(P("(x : Nat) -> Eq(Nat, x, x)"),
                   pi("x", nat(), eq(nat(), var("x"), var("x")))));
}

TEST_CASE("parse: application is left-associative; comma lists curry") {
    env e;
    term_ptr f = var("f");
    CHECK(alpha_eq(P("f(zero)(zero)"), app(app(f, zero()), zero())));
    CHECK(alpha_eq(P("f(zero, zero)"), app(app(f, zero()), zero())));
}

TEST_CASE("parse: positions in syntax errors") {
    try {
        P("succ(");
        FAIL("expected a syntax error");
    } catch (const syntax_error& ex) {
        CHECK(ex.line == 1);
        CHECK(ex.col >= 5);
    }
    CHECK_THROWS_AS(P("("), syntax_error);
    CHECK_THROWS_AS(P(")"), syntax_error);
    CHECK_THROWS_AS(P("\\x"), syntax_error);
    CHECK_THROWS_AS(P("Eq(Nat, zero, zero"), syntax_error);
}

TEST_CASE("parse: comments and whitespace") {
    CHECK(alpha_eq(P("succ( zero )  # trailing comment"), succ(zero())));
    CHECK(alpha_eq(P("# leading\nzero"), zero()));
}

TEST_CASE("parse: identifiers resolve to definitions else variables") {
    env e;
    parse_definitions("def two := succ(succ(zero));", e);
    CHECK(alpha_eq(P("two", e), defref("two")));
    CHECK(alpha_eq(P("two"), var("two")));  // empty env: a free variable
    // binders shadow definitions
    CHECK(alpha_eq(P("\\two. two", e), lam("two", var("two"))));
    // closed positions reject unknown identifiers
    CHECK_THROWS_AS(parse("mystery", e, parse_options{true}), syntax_error);
}

TEST_CASE("print: canonical forms match the pinned grammar") {
    CHECK(print(app(lam("x", var("x")), zero())) == "(\\x. x)(zero)");
    CHECK(print(pi("x", nat(), nat())) == "(x : Nat) -> Nat");
    CHECK(print(eq(nat(), zero(), zero())) == "Eq(Nat, zero, zero)");
    CHECK(print(app(lam("x", refl(var("x"))), zero())) == "(\\x. refl(x))(zero)");
    CHECK(print(natrec(zero(), nat(), lam("x", app(var("x"), var("x"))))) ==
          "natrec(zero, Nat, \\x. x(x))");
}

TEST_CASE("alphaEq: bound names are irrelevant, free names are not") {
    CHECK(alpha_eq(P("\\x. x"), P("\\y. y")));
    CHECK_FALSE(alpha_eq(P("\\x. x"), P("\\x. zero")));
    CHECK(alpha_eq(P("(x : Nat) -> Nat"), P("(y : Nat) -> Nat")));
    CHECK_FALSE(alpha_eq(P("x"), P("y")));
    CHECK(alpha_eq(P("x"), P("x")));
    // bound vs free occurrences of the same name differ
    CHECK_FALSE(alpha_eq(P("\\x. x"), P("\\y. x")));
}

TEST_CASE("alphaEq: equivalence relation on an enumerated corpus") {
    enum_spec spec;
    spec.max_size = 4;
    std::vector<term_ptr> corpus = enumerate_closed_all(spec);
    env e;
    // reflexivity and symmetry across the corpus, plus renamed copies
    for (const auto& t : corpus) {
        CHECK(alpha_eq(t, t));
        term_ptr renamed = parse(print(t), e);
        CHECK(alpha_eq(t, renamed));
        CHECK(alpha_eq(renamed, t));
    }
}

TEST_CASE("substitute: the self-application pattern") {
    // (x(x))[w/x] with w = \x. x(x) gives the divergent self-application
    term_ptr half = lam("x", app(var("x"), var("x")));
    term_ptr body = app(var("x"), var("x"));
    term_ptr result = substitute(body, "x", half);
    CHECK(alpha_eq(result, app(half, half)));
}

TEST_CASE("substitute: no-op and shadowing cases") {
    CHECK(alpha_eq(substitute(zero(), "x", succ(zero())), zero()));
    CHECK(alpha_eq(substitute(lam("x", var("x")), "x", zero()), lam("x", var("x"))));
}

TEST_CASE("substitute: capture avoidance renames binders") {
    // (\y. x)[y/x] must not capture: the result applied properly keeps y free
    term_ptr t = lam("y", var("x"));
    term_ptr r = substitute(t, "x", var("y"));
    CHECK(r->kind == term_kind::lam);
    CHECK(r->name != "y");
    CHECK(occurs_free(r, "y"));
    CHECK(alpha_eq(r, lam("z", var("y"))));
    // and for Pi bodies
    term_ptr p = pi("y", nat(), eq(nat(), var("x"), var("y")));
    term_ptr rp = substitute(p, "x", var("y"));
    CHECK(alpha_eq(rp, pi("w", nat(), eq(nat(), var("y"), var("w")))));
}

TEST_CASE("substitute: never captures, on generated binder/value pairs") {
    // alphaEq(substitute(\y. body, x, v), \y. substitute(body, x, v)) for y not free in v
    enum_spec spec;
    spec.max_size = 3;
    std::vector<term_ptr> bodies = enumerate_closed_all(spec, 2);  // open over x0, x1
    std::vector<term_ptr> values = {zero(), succ(zero()), lam("q", var("q")), nat()};
    for (const auto& body : bodies) {
        for (const auto& v : values) {
            term_ptr lhs = substitute(lam("x1", body), "x0", v);
            term_ptr rhs = lam("x1", substitute(body, "x0", v));
            CHECK(alpha_eq(lhs, rhs));
        }
    }
}

TEST_CASE("env: definitions unfold recursively and are acyclic by construction") {
    env e;
    parse_definitions("def two := succ(succ(zero)); def four := succ(succ(two));", e);
    CHECK(alpha_eq(unfold(P("two", e), e), P("succ(succ(zero))")));
    CHECK(alpha_eq(unfold(P("four", e), e), numeral(4)));
    CHECK(alpha_eq(unfold(zero(), e), zero()));
    // unknown reference
    CHECK_THROWS_AS(unfold(defref("missing"), e), unknown_definition);
    // duplicate names rejected
    CHECK_THROWS_AS(parse_definitions("def two := zero;", e), env_error);
    // open bodies rejected
    env e2;
    CHECK_THROWS_AS(parse_definitions("def bad := x;", e2), syntax_error);
    // forward references rejected (acyclicity)
    env e3;
    CHECK_THROWS_AS(parse_definitions("def a := b; def b := zero;", e3), syntax_error);
}

TEST_CASE("env: unfold is idempotent") {
    env e;
    parse_definitions("def two := succ(succ(zero)); def dup := \\f. f(two);", e);
    for (const char* src : {"two", "dup", "succ(two)", "dup(two)", "\\x. dup(x)"}) {
        term_ptr t = P(src, e);
        CHECK(alpha_eq(unfold(unfold(t, e), e), unfold(t, e)));
    }
}

TEST_CASE("round-trip: parse after print is identity up to alpha") {
    env e;
    enum_spec spec;
    spec.max_size = 5;
    long long n = 0;
    enumerate_closed(spec, [&](const term_ptr& t) {
        term_ptr back = parse(print(t), e);
        bool same = alpha_eq(back, t);
        if (!same) {
            CAPTURE(print(t));
            CHECK(same);
        }
        ++n;
        return true;
    });
    CHECK(n > 1000);
    // including open terms and definition references
    parse_definitions("def two := succ(succ(zero));", e);
    for (const char* src :
         {"x", "x(y)", "\\x. x(y)", "two", "succ(two)", "(x : Nat) -> Eq(Nat, x, two)"}) {
        term_ptr t = P(src, e);
        CHECK(alpha_eq(parse(print(t), e), t));
    }
}

TEST_CASE("primed identifiers: lexing, freshening, and round-trip") {
    CHECK(alpha_eq(P("\\x'. x'"), lam("q", var("q"))));
    CHECK(occurs_free(P("x''"), "x''"));
    // substitution freshens by priming; the result must reprint and reparse
    term_ptr r = substitute(lam("y", app(var("x"), var("y"))), "x", var("y"));
    CHECK(r->name == "y'");
    env e;
    CHECK(alpha_eq(parse(print(r), e), r));
    // freshening avoids names already taken in the body
    term_ptr body = app(app(var("x"), var("y")), var("y'"));
    term_ptr r2 = substitute(lam("y", body), "x", var("y"));
    CHECK(alpha_eq(r2, lam("q", app(app(var("y"), var("q")), var("y'")))));
}

TEST_CASE("node_count matches the size metric used for enumeration") {
    CHECK(node_count(zero()) == 1);
    CHECK(node_count(numeral(3)) == 4);
    CHECK(node_count(lam("x", var("x"))) == 2);
    CHECK(node_count(pi("x", nat(), nat())) == 3);
    CHECK(node_count(eq(nat(), zero(), zero())) == 4);
    // the divergent self-application weighs 9 nodes
    env e;
    CHECK(node_count(P("(\\x. x(x))(\\x. x(x))")) == 9);
}
