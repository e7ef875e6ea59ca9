#include "arithdyn/parser.hpp"

#include <cctype>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

constexpr unsigned kMaxExponent = 1u << 16;

class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> vars, std::size_t offset)
        : text_(text), vars_(vars), offset_(offset) {}

    Polynomial parse() {
        skip_space();
        if (pos_ == text_.size()) fail("empty expression");
        Polynomial p = expr();
        skip_space();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Polynomial d = factor();
                if (!d.is_constant()) {
                    pos_ = at;
                    fail("division by a non-constant");
                }
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc *= BigRat(1) / d.terms().begin()->second;
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        return power();
    }

    Polynomial power() {
        Polynomial base = primary();
        if (accept('^')) {
            skip_space();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected a nonnegative integer exponent");
            const BigInt e = integer();
            if (e > kMaxExponent) {
                pos_ = at;
                fail("exponent too large");
            }
            return base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    BigInt integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return parse_bigint(text_.substr(start, pos_ - start));
    }

    Polynomial primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Polynomial::constant(vars_.size(), BigRat(integer()));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
            }
            pos_ = start;
            fail("unknown variable '" + std::string(name) + "'");
        }
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::span<const std::string> vars_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> var_names, std::size_t offset) {
    return Parser(text, var_names, offset).parse();
}

HomogeneousForm parse_form(std::string_view text, std::span<const std::string> var_names, std::size_t offset) {
    Polynomial p = parse_polynomial(text, var_names, offset);
    if (p.is_zero()) return HomogeneousForm(std::move(p), 0);
    if (!p.is_homogeneous()) throw ParseError("inhomogeneous expression", offset);
    return HomogeneousForm(std::move(p));
}

BigRat parse_rational(std::string_view text, std::size_t offset) {
    Polynomial p = parse_polynomial(text, {}, offset);
    return p.is_zero() ? BigRat(0) : p.terms().begin()->second;
}

} // namespace arithdyn
