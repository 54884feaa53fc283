#pragma once

/**
 * @file parse.hpp
 * @brief Input grammar.
 *
 *   param  := "x" "=" expr (";" | ",") "y" "=" expr      expressions in t
 *           | "(" expr "," expr ")"
 *   poly   := expr                                       expression in X, Y
 *   expr   := ["+"|"-"] term (("+"|"-") term)*
 *   term   := factor (["*"] factor | "/" number)*
 *   factor := atom ["^" integer]
 *   atom   := number | variable | "(" expr ")"
 *
 * Whitespace is ignored; `*` may be omitted ("3X^2Y", "2t^3"). Variables are
 * case-insensitive, so "y^4 - x^9" reads as a polynomial in X, Y.
 */

#include <cctype>
#include <string>
#include <utility>

#include "bivariate.hpp"
#include "error.hpp"
#include "valuation.hpp"

namespace branchform {

namespace detail {

class ExprParser {
public:
    /// `vars` lists the accepted variable letters; the first maps to X, the second to Y.
    ExprParser(std::string text, std::string vars) : text_(std::move(text)), vars_(std::move(vars)) {}

    BivariatePoly parse_all() {
        BivariatePoly p = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::ParseError, why + " at position " + std::to_string(pos_) + " in \"" + text_ + "\"");
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    BivariatePoly expr() {
        BivariatePoly acc;
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        for (;;) {
            BivariatePoly t = term();
            acc = negate ? acc - t : acc + t;
            if (accept('+')) negate = false;
            else if (accept('-')) negate = true;
            else return acc;
        }
    }

    bool starts_factor(char c) const {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || is_var(c);
    }

    bool is_var(char c) const {
        char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return lc != '\0' && vars_.find(lc) != std::string::npos;
    }

    BivariatePoly term() {
        BivariatePoly acc = factor();
        for (;;) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (accept('/')) {
                Rational d = number();
                if (d.is_zero()) fail("division by zero");
                acc = d.inverse() * acc;
            } else if (starts_factor(peek())) {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    BivariatePoly factor() {
        BivariatePoly base = atom();
        if (accept('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a non-negative integer exponent");
            if (pos_ - start > 6) fail("exponent too large");
            base = base.pow(std::stoi(text_.substr(start, pos_ - start)));
        }
        return base;
    }

    Rational number() {
        skip();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Rational::parse(text_.substr(start, pos_ - start));
    }

    BivariatePoly atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return BivariatePoly::constant(number());
        if (accept('(')) {
            BivariatePoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (is_var(c)) {
            ++pos_;
            char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return lc == vars_[0] ? BivariatePoly::X() : BivariatePoly::Y();
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string text_;
    std::string vars_;
    size_t pos_ = 0;
};

inline TruncatedSeries poly_in_t(const BivariatePoly& p) {
    TruncatedSeries s;
    for (const auto& [e, c] : p.terms()) s.add_term(e.x, c);
    return s;
}

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Polynomial in X, Y.
inline BivariatePoly parse_polynomial(const std::string& text) {
    if (detail::trim(text).empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
    return detail::ExprParser(text, "xy").parse_all();
}

/// Polynomial in t, as an exact series.
inline TruncatedSeries parse_series(const std::string& text) {
    if (detail::trim(text).empty()) throw Error(ErrorKind::ParseError, "empty expression in t");
    return detail::poly_in_t(detail::ExprParser(text, "t").parse_all());
}

/// "x=<expr in t>; y=<expr in t>" or "(<expr>, <expr>)".
inline PuiseuxParam parse_param(const std::string& raw) {
    std::string text = detail::trim(raw);
    if (!text.empty() && text.front() == '(' && text.back() == ')') {
        std::string inner = text.substr(1, text.size() - 2);
        int depth = 0;
        for (size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(') ++depth;
            else if (inner[i] == ')') --depth;
            else if (inner[i] == ',' && depth == 0)
                return {parse_series(inner.substr(0, i)), parse_series(inner.substr(i + 1))};
        }
    }
    size_t sep = text.find_first_of(";,");
    if (sep == std::string::npos) throw Error(ErrorKind::ParseError, "expected \"x=...; y=...\" in \"" + raw + "\"");
    auto component = [&](std::string part, char name) {
        part = detail::trim(part);
        if (part.size() < 2 || std::tolower(static_cast<unsigned char>(part[0])) != name ||
            detail::trim(part.substr(1)).front() != '=')
            throw Error(ErrorKind::ParseError, std::string("expected \"") + name + "=...\" in \"" + raw + "\"");
        return parse_series(detail::trim(part.substr(1)).substr(1));
    };
    return {component(text.substr(0, sep), 'x'), component(text.substr(sep + 1), 'y')};
}

/// Parametrizations contain '=' or start with a tuple; everything else is a polynomial.
inline bool looks_like_param(const std::string& text) {
    std::string t = detail::trim(text);
    if (t.find('=') != std::string::npos) return true;
    return !t.empty() && t.front() == '(' && t.back() == ')' && t.find(',') != std::string::npos;
}

}  // namespace branchform
