#ifndef SENSEREF_PARSER_HPP
#define SENSEREF_PARSER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "senseref/env.hpp"
#include "senseref/errors.hpp"
#include "senseref/term.hpp"

namespace senseref {

enum class tok {
    ident,
    number,
    lambda,     // "\" or "λ"
    dot,
    lparen,
    rparen,
    lbracket,
    rbracket,
    colon,
    comma,
    arrow,      // "->" or "→"
    turnstile,  // "|-" or "⊢"
    assign,     // ":="
    semicolon,
    kw_def,
    kw_nat,
    kw_zero,
    kw_succ,
    kw_refl,
    kw_eqrec,
    kw_natrec,
    kw_eq,
    end,
};

struct token {
    tok kind;
    std::string text;
    std::size_t line;
    std::size_t col;
    bool adjacent;  // no whitespace between this token and the previous one
};

namespace detail {

inline bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_cont(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

inline std::vector<token> lex(std::string_view src) {
    std::vector<token> out;
    std::size_t i = 0, line = 1, col = 1;
    bool adjacent = false;
    auto push = [&](tok k, std::string text, std::size_t l, std::size_t c) {
        out.push_back({k, std::move(text), l, c, adjacent});
        adjacent = true;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++i;
            ++line;
            col = 1;
            adjacent = false;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            adjacent = false;
            continue;
        }
        if (c == '#') {  // comment to end of line
            while (i < src.size() && src[i] != '\n') ++i;
            adjacent = false;
            continue;
        }
        std::size_t l = line, cl = col;
        auto advance = [&](std::size_t n) {
            i += n;
            col += n;
        };
        if (ident_start(c)) {
            std::size_t j = i + 1;
            while (j < src.size() && ident_cont(src[j])) ++j;
            std::string word(src.substr(i, j - i));
            advance(j - i);
            tok k = tok::ident;
            if (word == "def") k = tok::kw_def;
            else if (word == "Nat") k = tok::kw_nat;
            else if (word == "zero") k = tok::kw_zero;
            else if (word == "succ") k = tok::kw_succ;
            else if (word == "refl") k = tok::kw_refl;
            else if (word == "eqrec") k = tok::kw_eqrec;
            else if (word == "natrec") k = tok::kw_natrec;
            else if (word == "Eq") k = tok::kw_eq;
            push(k, std::move(word), l, cl);
            continue;
        }
        if (c >= '0' && c <= '9') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9') ++j;
            std::string digits(src.substr(i, j - i));
            advance(j - i);
            push(tok::number, std::move(digits), l, cl);
            continue;
        }
        auto two = src.substr(i, 2);
        if (two == "->") {
            advance(2);
            push(tok::arrow, "->", l, cl);
            continue;
        }
        if (two == "|-") {
            advance(2);
            push(tok::turnstile, "|-", l, cl);
            continue;
        }
        if (two == ":=") {
            advance(2);
            push(tok::assign, ":=", l, cl);
            continue;
        }
        // UTF-8 aliases for the ASCII spellings
        if (src.substr(i, 2) == "\xce\xbb") {  // λ
            advance(2);
            push(tok::lambda, "\\", l, cl);
            continue;
        }
        if (src.substr(i, 3) == "\xe2\x86\x92") {  // →
            advance(3);
            push(tok::arrow, "->", l, cl);
            continue;
        }
        if (src.substr(i, 3) == "\xe2\x8a\xa2") {  // ⊢
            advance(3);
            push(tok::turnstile, "|-", l, cl);
            continue;
        }
        switch (c) {
            case '\\': advance(1); push(tok::lambda, "\\", l, cl); continue;
            case '.': advance(1); push(tok::dot, ".", l, cl); continue;
            case '(': advance(1); push(tok::lparen, "(", l, cl); continue;
            case ')': advance(1); push(tok::rparen, ")", l, cl); continue;
            case '[': advance(1); push(tok::lbracket, "[", l, cl); continue;
            case ']': advance(1); push(tok::rbracket, "]", l, cl); continue;
            case ':': advance(1); push(tok::colon, ":", l, cl); continue;
            case ',': advance(1); push(tok::comma, ",", l, cl); continue;
            case ';': advance(1); push(tok::semicolon, ";", l, cl); continue;
            default:
                throw syntax_error(std::string("unrecognized character '") + c + "'", l, col);
        }
    }
    out.push_back({tok::end, "", line, col, false});
    return out;
}

}  // namespace detail

struct parse_options {
    // When set, identifiers that are neither bound nor defined are rejected
    // at parse time instead of parsing as free variables.
    bool require_closed = false;
};

// Recursive-descent parser over the concrete grammar. One instance may parse
// several terms in sequence from the same input (the command layer relies on
// this): a term extends greedily, and application only continues across a
// '(' that is adjacent to the function part, so "f(a)" is an application
// while "f (a)" ends the term before the parenthesis.
class term_parser {
  public:
    term_parser(std::string_view src, const env& e, parse_options opt = {})
        : tokens_(detail::lex(src)), env_(&e), opt_(opt) {}

    const token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    bool at_end() const { return peek().kind == tok::end; }

    term_ptr parse_term() {
        switch (peek().kind) {
            case tok::lambda: {
                next();
                std::string binder = take_ident("binder after '\\'");
                expect(tok::dot, "'.' after binder");
                scope_.push_back(binder);
                term_ptr body = parse_term();
                scope_.pop_back();
                return lam(std::move(binder), std::move(body));
            }
            default:
                return parse_arrow();
        }
    }

    // One whole term with nothing left over.
    term_ptr parse_only_term() {
        term_ptr t = parse_term();
        if (!at_end())
            throw syntax_error("unexpected '" + describe(peek()) + "' after term", peek().line,
                               peek().col);
        return t;
    }

    // --- small helpers used by the command layer ---

    bool take_if(tok k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }

    void take_any() { next(); }

    void expect(tok k, const char* what) {
        if (peek().kind != k)
            throw syntax_error(std::string("expected ") + what + ", found '" + describe(peek()) + "'",
                               peek().line, peek().col);
        next();
    }

    std::string take_ident(const char* what) {
        if (peek().kind != tok::ident)
            throw syntax_error(std::string("expected ") + what + ", found '" + describe(peek()) + "'",
                               peek().line, peek().col);
        std::string s = peek().text;
        next();
        return s;
    }

    bool peek_word(const char* w) const {
        return peek().kind == tok::ident && peek().text == w;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw syntax_error(msg, peek().line, peek().col);
    }

  private:
    void next() { ++pos_; }

    static std::string describe(const token& t) {
        return t.kind == tok::end ? "end of input" : t.text;
    }

    bool bound(const std::string& name) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (*it == name) return true;
        return false;
    }

    term_ptr parse_arrow() {
        term_ptr lhs;
        // dependent function type: "(" ident ":" term ")" "->" term
        if (peek().kind == tok::lparen && peek(1).kind == tok::ident && peek(2).kind == tok::colon) {
            next();
            std::string binder = take_ident("binder");
            expect(tok::colon, "':' in dependent function type");
            term_ptr domain = parse_term();
            expect(tok::rparen, "')' closing the binder");
            expect(tok::arrow, "'->' after '(x : A)'");
            scope_.push_back(binder);
            term_ptr body = parse_term();
            scope_.pop_back();
            return pi(std::move(binder), std::move(domain), std::move(body));
        }
        lhs = parse_app();
        if (peek().kind == tok::arrow) {
            next();
            term_ptr rhs = parse_term();  // right-associative
            std::string binder = fresh_name("_", free_vars(rhs));
            return pi(std::move(binder), std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    term_ptr parse_app() {
        term_ptr head = parse_atom();
        // Application argument lists: f(a), f(a)(b), and f(a, b) as sugar
        // for f(a)(b). The '(' must be adjacent to the function part.
        while (peek().kind == tok::lparen && peek().adjacent) {
            next();
            head = app(std::move(head), parse_term());
            while (take_if(tok::comma)) head = app(std::move(head), parse_term());
            expect(tok::rparen, "')' closing the argument");
        }
        return head;
    }

    std::vector<term_ptr> parse_fixed_args(const char* form, std::size_t arity) {
        const token& at = peek();
        expect(tok::lparen, "'(' after the form name");
        std::vector<term_ptr> args;
        if (peek().kind != tok::rparen) {
            args.push_back(parse_term());
            while (take_if(tok::comma)) args.push_back(parse_term());
        }
        expect(tok::rparen, "')'");
        if (args.size() != arity)
            throw arity_error(std::string(form) + " takes exactly " + std::to_string(arity) +
                                  " argument(s), got " + std::to_string(args.size()),
                              at.line, at.col);
        return args;
    }

    term_ptr parse_atom() {
        const token& t = peek();
        switch (t.kind) {
            case tok::kw_nat:
                next();
                return nat();
            case tok::kw_zero:
                next();
                return zero();
            case tok::kw_succ: {
                next();
                auto args = parse_fixed_args("succ", 1);
                return succ(args[0]);
            }
            case tok::kw_refl: {
                next();
                auto args = parse_fixed_args("refl", 1);
                return refl(args[0]);
            }
            case tok::kw_eqrec: {
                next();
                auto args = parse_fixed_args("eqrec", 2);
                return eqrec(args[0], args[1]);
            }
            case tok::kw_natrec: {
                next();
                auto args = parse_fixed_args("natrec", 3);
                return natrec(args[0], args[1], args[2]);
            }
            case tok::kw_eq: {
                next();
                auto args = parse_fixed_args("Eq", 3);
                return eq(args[0], args[1], args[2]);
            }
            case tok::number: {
                next();
                std::uint64_t n = 0;
                for (char d : t.text) {
                    n = n * 10 + static_cast<std::uint64_t>(d - '0');
                    if (n > 65535)
                        throw syntax_error("numeral literal too large (limit 65535)", t.line,
                                           t.col);
                }
                return numeral(n);
            }
            case tok::ident: {
                next();
                if (bound(t.text)) return var(t.text);
                if (env_->contains(t.text)) return defref(t.text);
                if (opt_.require_closed)
                    throw syntax_error("unknown identifier '" + t.text + "'", t.line, t.col);
                return var(t.text);
            }
            case tok::lparen: {
                next();
                term_ptr inner = parse_term();
                expect(tok::rparen, "')'");
                return inner;
            }
            default:
                throw syntax_error("expected a term, found '" + describe(t) + "'", t.line, t.col);
        }
    }

    std::vector<token> tokens_;
    std::size_t pos_ = 0;
    const env* env_;
    parse_options opt_;
    std::vector<std::string> scope_;
};

inline term_ptr parse(const std::string& src, const env& e, parse_options opt = {}) {
    term_parser p(src, e, opt);
    return p.parse_only_term();
}

// Definition files: a sequence of `def <name> := <term>;`. Bodies must be
// closed and may refer only to earlier definitions.
inline void parse_definitions(const std::string& src, env& e) {
    term_parser p(src, e, parse_options{true});
    while (!p.at_end()) {
        p.expect(tok::kw_def, "'def'");
        std::string name = p.take_ident("definition name");
        p.expect(tok::assign, "':='");
        // Parse against the current environment so earlier names resolve.
        term_ptr body = p.parse_term();
        p.expect(tok::semicolon, "';' ending the definition");
        e.define(name, body);
    }
}

}  // namespace senseref

#endif
