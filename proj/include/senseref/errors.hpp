#ifndef SENSEREF_ERRORS_HPP
#define SENSEREF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace senseref {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexer/parser failure. Carries a 1-based source position.
struct syntax_error : error {
    syntax_error(const std::string& msg, std::size_t line, std::size_t col)
        : error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    std::size_t line = 0;
    std::size_t col = 0;
};

// Fixed-arity form applied to the wrong number of arguments (e.g. succ(a, b)).
struct arity_error : syntax_error {
    using syntax_error::syntax_error;
};

struct open_term_error : error {
    explicit open_term_error(const std::string& var)
        : error("open term: free variable '" + var + "'"), var(var) {}
    std::string var;
};

struct unknown_definition : error {
    explicit unknown_definition(const std::string& name)
        : error("unknown definition '" + name + "'"), name(name) {}
    std::string name;
};

// The type slot of a judgment does not evaluate to a canonical type.
struct not_canonical_type : error {
    using error::error;
};

struct type_mismatch : error {
    using error::error;
};

struct scope_error : error {
    using error::error;
};

// Invalid definition environment update (duplicate name, open body, ...).
struct env_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

}  // namespace senseref

#endif
