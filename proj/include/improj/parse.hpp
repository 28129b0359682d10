// Text syntax for polynomials. Variables are z1, z2, ... (x, y, z accepted as
// aliases for z1, z2, z3); `i` is the imaginary unit; rationals may be given
// as a/b or as exact decimals. Juxtaposition is allowed only for
// coefficient-times-variable ("2z1", "3i"); everything else needs `*`.
#ifndef IMPROJ_PARSE_HPP
#define IMPROJ_PARSE_HPP

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace improj {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

namespace parse_detail {

constexpr int kMaxExponent = 64;

struct Token {
    enum Kind { Number, Imag, Var, Plus, Minus, Times, Caret, LParen, RParen, End } kind;
    Rational value{0}; // Number
    int var = 0;       // Var (0-based)
    std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t pos = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            Integer ip(s.substr(i, j - i));
            Rational val(ip);
            if (j < s.size() && s[j] == '.') {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == j + 1) throw ParseError("malformed decimal literal", j);
                Integer frac(s.substr(j + 1, k - j - 1));
                Integer den(1);
                for (std::size_t t = 0; t < k - j - 1; ++t) den *= 10;
                val += Rational(frac, den);
                j = k;
            } else if (j < s.size() && s[j] == '/') {
                std::size_t k = j + 1;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == j + 1) throw ParseError("malformed rational literal", j);
                Integer den(s.substr(j + 1, k - j - 1));
                if (den == 0) throw ParseError("zero denominator", j);
                val /= Rational(den);
                j = k;
            }
            out.push_back({Token::Number, val, 0, pos});
            i = j;
            continue;
        }
        if (c == 'i') {
            out.push_back({Token::Imag, Rational(0), 0, pos});
            ++i;
            continue;
        }
        if (c == 'z' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            long idx = std::stol(s.substr(i + 1, j - i - 1));
            if (idx < 1 || idx > 64) throw ParseError("variable index out of range", pos);
            out.push_back({Token::Var, Rational(0), static_cast<int>(idx - 1), pos});
            i = j;
            continue;
        }
        if (c == 'x' || c == 'y' || c == 'z') {
            int idx = c == 'x' ? 0 : (c == 'y' ? 1 : 2);
            out.push_back({Token::Var, Rational(0), idx, pos});
            ++i;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Token::Plus, Rational(0), 0, pos}); break;
            case '-': out.push_back({Token::Minus, Rational(0), 0, pos}); break;
            case '*': out.push_back({Token::Times, Rational(0), 0, pos}); break;
            case '^': out.push_back({Token::Caret, Rational(0), 0, pos}); break;
            case '(': out.push_back({Token::LParen, Rational(0), 0, pos}); break;
            case ')': out.push_back({Token::RParen, Rational(0), 0, pos}); break;
            default: throw ParseError(std::string("unknown token '") + c + "'", pos);
        }
        ++i;
    }
    out.push_back({Token::End, Rational(0), 0, s.size()});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> toks, int nvars) : t_(std::move(toks)), nvars_(nvars) {}

    Poly parse_expr() {
        Poly acc = parse_term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool minus = next().kind == Token::Minus;
            Poly rhs = parse_term();
            acc = minus ? acc - rhs : acc + rhs;
        }
        return acc;
    }

    void expect_end() {
        if (peek().kind != Token::End) throw ParseError("unexpected trailing input", peek().pos);
    }

  private:
    Poly parse_term() {
        Poly acc = parse_unary();
        bool last_was_number = starts_with_plain_number_;
        while (true) {
            const Token& p = peek();
            if (p.kind == Token::Times) {
                next();
                acc = acc * parse_unary();
                last_was_number = false;
            } else if (p.kind == Token::Var || p.kind == Token::Imag) {
                // juxtaposition: only coefficient followed by a variable or i
                if (!last_was_number)
                    throw ParseError("implicit multiplication requires an explicit '*'", p.pos);
                acc = acc * parse_power();
                last_was_number = false;
            } else {
                break;
            }
        }
        return acc;
    }

    Poly parse_unary() {
        if (peek().kind == Token::Minus) {
            next();
            return -parse_unary();
        }
        if (peek().kind == Token::Plus) {
            next();
            return parse_unary();
        }
        return parse_power();
    }

    Poly parse_power() {
        Poly base = parse_atom();
        while (peek().kind == Token::Caret) {
            std::size_t cpos = next().pos;
            const Token& e = peek();
            if (e.kind != Token::Number || denom(e.value) != 1 || e.value < 0)
                throw ParseError("exponent must be a non-negative integer", cpos);
            if (e.value > kMaxExponent) throw ParseError("exponent overflow", e.pos);
            next();
            base = base.pow(static_cast<unsigned>(e.value.convert_to<long>()));
        }
        return base;
    }

    Poly parse_atom() {
        const Token& t = peek();
        starts_with_plain_number_ = false;
        switch (t.kind) {
            case Token::Number:
                next();
                starts_with_plain_number_ = true;
                return Poly::constant(nvars_, GaussianRational(t.value));
            case Token::Imag:
                next();
                return Poly::constant(nvars_, GaussianRational(Rational(0), Rational(1)));
            case Token::Var:
                next();
                return Poly::variable(nvars_, t.var);
            case Token::LParen: {
                next();
                Poly inner = parse_expr();
                if (peek().kind != Token::RParen) throw ParseError("expected ')'", peek().pos);
                next();
                return inner;
            }
            default: throw ParseError("expected a number, variable, 'i' or '('", t.pos);
        }
    }

    const Token& peek() const { return t_[k_]; }
    const Token& next() { return t_[k_++]; }

    std::vector<Token> t_;
    std::size_t k_ = 0;
    int nvars_;
    bool starts_with_plain_number_ = false;
};

} // namespace parse_detail

inline Poly parse_poly(const std::string& text) {
    auto toks = parse_detail::lex(text);
    int nvars = 0;
    for (const auto& t : toks)
        if (t.kind == parse_detail::Token::Var) nvars = std::max(nvars, t.var + 1);
    parse_detail::Parser p(std::move(toks), nvars);
    Poly out = p.parse_expr();
    p.expect_end();
    return out;
}

namespace parse_detail {

inline std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

/// Pure-imaginary magnitude: "i", "2i", "3/4i".
inline std::string imag_str(const Rational& b) {
    if (b == 1) return "i";
    return rational_str(b) + "i";
}

} // namespace parse_detail

/// Canonical text form: graded-lex term order, descending; round-trips
/// through parse_poly exactly.
inline std::string format_poly(const Poly& p) {
    using parse_detail::imag_str;
    using parse_detail::rational_str;
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        bool has_vars = false;
        for (int v : e)
            if (v) has_vars = true;

        // sign and magnitude
        std::string coeff;
        bool negative = false;
        if (c.im == 0) {
            negative = c.re < 0;
            Rational mag = rat_abs(c.re);
            if (mag != 1 || !has_vars) coeff = rational_str(mag);
        } else if (c.re == 0) {
            negative = c.im < 0;
            coeff = imag_str(rat_abs(c.im));
        } else {
            std::string inner = rational_str(c.re) +
                                (c.im > 0 ? " + " + imag_str(c.im) : " - " + imag_str(-c.im));
            coeff = "(" + inner + ")";
        }

        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        os << coeff;
        bool any = !coeff.empty();
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (any) os << "*";
            os << "z" << (v + 1);
            if (e[v] > 1) os << "^" << e[v];
            any = true;
        }
    }
    return os.str();
}

} // namespace improj

#endif
