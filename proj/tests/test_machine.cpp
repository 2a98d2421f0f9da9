#include <doctest.h>

#include <optional>
#include <string>
#include <vector>

#include "senseref/enumerate.hpp"
#include "senseref/machine.hpp"
#include "senseref/parser.hpp"
#include "senseref/printer.hpp"

using namespace senseref;

namespace {

const env& empty_env() {
    static env e;
    return e;
}

term_ptr P(const std::string& src) { return parse(src, empty_env()); }

term_ptr omega() { return P("(\\x. x(x))(\\x. x(x))"); }

env arith_env() {
    env e;
    parse_definitions(
        "def add := \\m. \\n. natrec(m, n, \\k. \\r. succ(r));"
        "def two := succ(succ(zero));",
        e);
    return e;
}

}  // namespace

TEST_CASE("isValue: constructor forms are values, applications are not") {
    CHECK(is_value(P("\\x. zero")));
    CHECK(is_value(P("succ(zero)")));
    CHECK_FALSE(is_value(P("(\\x. x)(zero)")));
    CHECK(is_value(P("Nat")));
    CHECK(is_value(P("zero")));
    CHECK(is_value(P("refl(zero)")));
    CHECK(is_value(P("Eq(Nat, zero, zero)")));
    CHECK(is_value(P("(x : Nat) -> Nat")));
    // constructors are lazy: anything under succ/refl stays unevaluated
    CHECK(is_value(P("succ((\\x. x)(zero))")));
    CHECK(is_value(P("succ(Nat)")));
    CHECK_FALSE(is_value(P("natrec(zero, zero, \\k. \\r. r)")));
    CHECK_FALSE(is_value(P("eqrec(refl(zero), zero)")));
}

TEST_CASE("isValue: a lambda that immediately applies its binder is a redex, not a value") {
    CHECK_FALSE(is_value(P("\\x. zero(x)")));
    CHECK_FALSE(is_value(P("\\x. (\\y. y)(x)")));
    // x free in the function part blocks the contraction
    CHECK(is_value(P("\\x. x(x)")));
}

TEST_CASE("isValue: open terms are rejected") {
    CHECK_THROWS_AS(is_value(P("x")), open_term_error);
    CHECK_THROWS_AS(is_value(P("succ(x)")), open_term_error);
}

TEST_CASE("step: the numeral recursor on a successor") {
    term_ptr b = zero();
    term_ptr c = lam("k", lam("r", succ(var("r"))));
    step_result r = step(natrec(succ(zero()), b, c), empty_env());
    REQUIRE(r.is_step());
    CHECK(alpha_eq(r.next, app(app(c, zero()), natrec(zero(), b, c))));
}

TEST_CASE("step: the equality eliminator consumes refl") {
    step_result r = step(P("eqrec(refl(zero), zero)"), empty_env());
    REQUIRE(r.is_step());
    CHECK(alpha_eq(r.next, zero()));
}

TEST_CASE("step: ill-typed heads are stuck, not errors") {
    CHECK(step(P("zero(zero)"), empty_env()).is_stuck());
    CHECK(step(P("eqrec(zero, zero)"), empty_env()).is_stuck());
    CHECK(step(P("natrec(\\x. x, zero, zero)"), empty_env()).is_stuck());
    CHECK(step(P("Nat(zero)"), empty_env()).is_stuck());
}

TEST_CASE("step: head congruence reduces the scrutinee position") {
    step_result r = step(P("((\\x. x)(\\y. y))(zero)"), empty_env());
    REQUIRE(r.is_step());
    CHECK(alpha_eq(r.next, P("(\\y. y)(zero)")));
    r = step(P("natrec((\\x. x)(zero), zero, zero)"), empty_env());
    REQUIRE(r.is_step());
    CHECK(alpha_eq(r.next, P("natrec(zero, zero, zero)")));
}

TEST_CASE("step: definition references unfold transparently") {
    env e = arith_env();
    step_result r = step(parse("two", e), e);
    REQUIRE(r.is_step());
    CHECK(r.via_unfold);
    CHECK(alpha_eq(r.next, P("succ(succ(zero))")));
    // in head position too
    r = step(parse("add(two)(two)", e), e);
    REQUIRE(r.is_step());
    CHECK(r.via_unfold);
}

TEST_CASE("eval: the classic example reaches its canonical form") {
    eval_result r = eval(P("(\\x. refl(x))(zero)"), empty_env(), 100);
    REQUIRE(r.evaluated());
    CHECK(alpha_eq(r.t, refl(zero())));
    CHECK(r.steps == 1);
}

TEST_CASE("eval: the self-application loops at any fuel") {
    for (long long fuel : {0LL, 1LL, 10LL, 1000LL}) {
        eval_result r = eval(omega(), empty_env(), fuel);
        CHECK(r.out_of_fuel());
        CHECK(alpha_eq(r.t, omega()));
    }
}

TEST_CASE("step: the self-application transitions to itself exactly") {
    step_result r = step(omega(), empty_env());
    REQUIRE(r.is_step());
    CHECK(alpha_eq(r.next, omega()));
    CHECK(print(r.next) == print(omega()));
}

namespace {

// Numeral readback: evaluation is weak (succ never evaluates its argument),
// so numbers are read off by evaluating layer by layer.
std::optional<std::uint64_t> deep_numeral(term_ptr t, const env& e, long long fuel = 10000) {
    std::uint64_t n = 0;
    for (;;) {
        eval_result r = eval(t, e, fuel);
        if (!r.evaluated()) return std::nullopt;
        if (r.t->kind == term_kind::zero) return n;
        if (r.t->kind != term_kind::succ) return std::nullopt;
        ++n;
        t = r.t->a;
    }
}

}  // namespace

TEST_CASE("eval: addition by primitive recursion (oracle-frozen values)") {
    env e = arith_env();
    // hand-run of the six rules: add(2)(3) computes 5, reached as a weak
    // succ-headed value whose argument carries the remaining recursion
    eval_result r = eval(parse("add(2)(3)", e), e);
    REQUIRE(r.evaluated());
    CHECK(r.t->kind == term_kind::succ);
    CHECK(deep_numeral(r.t, e) == 5);
    // comma sugar spells the same application
    CHECK(deep_numeral(parse("add(2, 3)", e), e) == 5);
    CHECK(deep_numeral(parse("add(0, 0)", e), e) == 0);
    CHECK(deep_numeral(parse("add(7, 8)", e), e) == 15);
}

TEST_CASE("eval: already-canonical terms cost zero steps") {
    eval_result r = eval(zero(), empty_env(), 0);
    REQUIRE(r.evaluated());
    CHECK(r.steps == 0);
    r = eval(P("succ((\\x. x)(zero))"), empty_env(), 0);
    REQUIRE(r.evaluated());  // lazy: the argument is not touched
}

TEST_CASE("eval: eta contraction fires on closed function parts") {
    eval_result r = eval(P("\\x. (\\y. y)(x)"), empty_env(), 10);
    REQUIRE(r.evaluated());
    CHECK(alpha_eq(r.t, P("\\y. y")));
    CHECK(r.steps == 1);
}

TEST_CASE("trace: one beta step, already-value, and the divergent loop") {
    trace tr = trace_of(P("(\\x. x)(zero)"), empty_env(), 10);
    REQUIRE(tr.entries.size() == 2);
    CHECK(alpha_eq(tr.entries[0].t, P("(\\x. x)(zero)")));
    CHECK(alpha_eq(tr.entries[1].t, zero()));
    CHECK(tr.terminal.evaluated());

    tr = trace_of(zero(), empty_env(), 10);
    REQUIRE(tr.entries.size() == 1);
    CHECK(tr.terminal.evaluated());

    tr = trace_of(omega(), empty_env(), 3);
    REQUIRE(tr.entries.size() == 4);  // initial plus three steps
    for (const auto& entry : tr.entries) CHECK(alpha_eq(entry.t, omega()));
    CHECK(tr.terminal.out_of_fuel());
}

TEST_CASE("trace: terminal agrees with eval") {
    env e = arith_env();
    for (const char* src : {"add(2, 2)", "zero(zero)", "succ(zero)", "two"}) {
        term_ptr t = parse(src, e);
        trace tr = trace_of(t, e, 50);
        eval_result ev = eval(t, e, 50);
        CHECK(tr.terminal.k == ev.k);
        CHECK(alpha_eq(tr.terminal.t, ev.t));
        CHECK(tr.terminal.steps == ev.steps);
    }
}

TEST_CASE("trace: unfold entries are flagged and not counted as steps") {
    env e = arith_env();
    trace tr = trace_of(parse("two", e), e, 10);
    REQUIRE(tr.entries.size() == 2);
    CHECK(tr.entries[1].h == trace_entry::how::unfold);
    CHECK(tr.terminal.steps == 0);
    std::string rendered = render_trace(tr);
    CHECK(rendered.find("==> succ(succ(zero))") != std::string::npos);
}

TEST_CASE("machine invariants on the enumerated corpus") {
    enum_spec spec;
    spec.max_size = 5;
    const env& e = empty_env();
    long long checked = 0;
    enumerate_closed(spec, [&](const term_ptr& t) {
        ++checked;
        bool v = is_value(t);
        step_result r1 = step(t, e);
        step_result r2 = step(t, e);
        // classification is a partition and step is a function
        CHECK(r1.k == r2.k);
        CHECK(v == r1.is_value());
        if (r1.is_step()) CHECK(alpha_eq(r1.next, r2.next));
        // values are normal: eval with zero fuel succeeds immediately
        if (v) {
            eval_result ev = eval(t, e, 0);
            CHECK(ev.evaluated());
            CHECK(ev.steps == 0);
            CHECK(alpha_eq(ev.t, t));
        }
        return true;
    });
    CHECK(checked > 1000);
}

TEST_CASE("beta soundness: contracting a redex preserves results") {
    enum_spec spec;
    spec.max_size = 6;
    const env& e = empty_env();
    const long long fuel = 200;
    enumerate_closed(spec, [&](const term_ptr& t) {
        if (t->kind != term_kind::app || t->a->kind != term_kind::lam) return true;
        term_ptr contracted = substitute(t->a->a, t->a->name, t->b);
        eval_result r1 = eval(t, e, fuel);
        eval_result r2 = eval(contracted, e, fuel);
        if (r2.evaluated() && r2.steps < fuel) {
            CHECK(r1.evaluated());
            CHECK(alpha_eq(r1.t, r2.t));
            CHECK(r1.steps == r2.steps + 1);
        }
        if (r2.out_of_fuel()) CHECK(r1.out_of_fuel());
        return true;
    });
}

TEST_CASE("fuel monotonicity") {
    env e = arith_env();
    std::vector<term_ptr> terms = {parse("add(3, 4)", e), P("(\\x. refl(x))(zero)"),
                                   P("natrec(succ(succ(zero)), zero, \\k. \\r. succ(succ(r)))")};
    for (const auto& t : terms) {
        eval_result base = eval(t, e, 1000);
        REQUIRE(base.evaluated());
        for (long long extra : {0LL, 1LL, 7LL, 1000LL}) {
            eval_result again = eval(t, e, base.steps + extra);
            CHECK(again.evaluated());
            CHECK(again.steps == base.steps);
            CHECK(alpha_eq(again.t, base.t));
        }
        // one unit short of the needed fuel must exhaust
        if (base.steps > 0) {
            eval_result shy = eval(t, e, base.steps - 1);
            CHECK(shy.out_of_fuel());
        }
    }
}

TEST_CASE("fuel monotonicity across the enumerated corpus") {
    enum_spec spec;
    spec.max_size = 4;
    const env& e = empty_env();
    enumerate_closed(spec, [&](const term_ptr& t) {
        eval_result base = eval(t, e, 50);
        if (!base.evaluated()) return true;
        for (long long fuel : {base.steps, base.steps + 1, base.steps + 13, 200LL}) {
            eval_result again = eval(t, e, fuel);
            CHECK(again.evaluated());
            CHECK(again.steps == base.steps);
            CHECK(alpha_eq(again.t, base.t));
        }
        return true;
    });
}

TEST_CASE("eval and step reject open terms") {
    CHECK_THROWS_AS(eval(P("succ(x)"), empty_env(), 10), open_term_error);
    CHECK_THROWS_AS(step(P("x(zero)"), empty_env()), open_term_error);
    CHECK_THROWS_AS(trace_of(P("x"), empty_env(), 10), open_term_error);
}
