// A short tour of the library surface: build terms, run the machine, ask
// the judgment checkers, and compare senses. Prints what it finds.

#include <iostream>

#include "senseref/senseref.hpp"

using namespace senseref;

int main() {
    env defs;
    parse_definitions(
        "def two := succ(succ(zero));"
        "def add := \\m. \\n. natrec(m, n, \\k. \\r. succ(r));",
        defs);

    // evaluation: from program to value
    term_ptr t = parse("(\\x. refl(x))(zero)", defs);
    eval_result r = eval(t, defs);
    std::cout << print(t) << "  evaluates to  " << print(r.t) << "\n";

    // a program with no reference
    term_ptr omega = parse("(\\x. x(x))(\\x. x(x))", defs);
    std::cout << print(omega) << "  ->  "
              << (eval(omega, defs, 1000).out_of_fuel() ? "no value within fuel" : "?") << "\n";

    // judgmental equality via the meaning of the type
    budget b;
    b.instance_size = 5;
    b.samples = 16;
    verdict v = check_term_eq(parse("add(2)(3)", defs), parse("add(3)(2)", defs), nat(), defs, b);
    std::cout << v.word() << "  " << v.judgment << "\n";

    // same reference, different sense
    term_ptr redex = parse("(\\x. x)(zero)", defs);
    std::cout << "coref:   " << coref_terms(redex, zero(), nat(), defs, b).word() << "\n";
    std::cout << "senseEq: " << sense_eq(redex, zero(), defs).word() << "\n";

    // the hypothetical judgment behind commutativity
    verdict hyp = check_hypothetical({{"x", nat()}, {"y", nat()}},
                                     judgment::term_eq(parse("add(x)(y)", defs),
                                                       parse("add(y)(x)", defs), nat()),
                                     defs, b);
    std::cout << hyp.word() << "  " << hyp.judgment << "\n";
    for (const auto& note : hyp.notes) std::cout << "  note: " << note << "\n";
    return 0;
}
