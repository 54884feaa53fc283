#pragma once

/**
 * @file bivariate.hpp
 * @brief Sparse polynomials in X, Y over the rationals, and their pullback
 * along a pair of power series.
 */

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "series.hpp"

namespace branchform {

struct Exponent {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

class BivariatePoly {
public:
    using TermMap = std::map<Exponent, Rational>;

    BivariatePoly() = default;

    static BivariatePoly monomial(const Rational& c, int a, int b) {
        BivariatePoly p;
        p.add_term({a, b}, c);
        return p;
    }
    static BivariatePoly constant(const Rational& c) { return monomial(c, 0, 0); }
    static BivariatePoly X() { return monomial(1, 1, 0); }
    static BivariatePoly Y() { return monomial(1, 0, 1); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(int a, int b) const {
        auto it = terms_.find({a, b});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Exponent e, const Rational& c) {
        if (e.x < 0 || e.y < 0) throw std::domain_error("negative exponent in polynomial");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    BivariatePoly operator-() const {
        BivariatePoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) { return a + (-b); }

    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term({ea.x + eb.x, ea.y + eb.y}, ca * cb);
        return r;
    }

    friend BivariatePoly operator*(const Rational& s, const BivariatePoly& a) {
        BivariatePoly r;
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }

    BivariatePoly& operator+=(const BivariatePoly& o) { return *this = *this + o; }
    BivariatePoly& operator-=(const BivariatePoly& o) { return *this = *this - o; }
    BivariatePoly& operator*=(const BivariatePoly& o) { return *this = *this * o; }

    BivariatePoly pow(int n) const {
        BivariatePoly r = constant(1);
        for (int i = 0; i < n; ++i) r *= *this;
        return r;
    }

    BivariatePoly d_dx() const {
        BivariatePoly r;
        for (const auto& [e, c] : terms_)
            if (e.x > 0) r.add_term({e.x - 1, e.y}, Rational(e.x) * c);
        return r;
    }

    BivariatePoly d_dy() const {
        BivariatePoly r;
        for (const auto& [e, c] : terms_)
            if (e.y > 0) r.add_term({e.x, e.y - 1}, Rational(e.y) * c);
        return r;
    }

    int max_x_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.x);
        return d;
    }
    int max_y_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.y);
        return d;
    }

    /// Lowest total degree of a monomial (the multiplicity of the curve p = 0 at the origin).
    int order() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = (d < 0) ? e.x + e.y : std::min(d, e.x + e.y);
        return d;
    }

    friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

    std::string str(const char* xv = "X", const char* yv = "Y") const {
        std::ostringstream os;
        bool first = true;
        // Highest y-degree first reads like the usual Y^n + ... presentation.
        std::vector<std::pair<Exponent, Rational>> order(terms_.begin(), terms_.end());
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            return a.first.y != b.first.y ? a.first.y > b.first.y : a.first.x > b.first.x;
        });
        for (const auto& [e, c] : order) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0) os << "-";
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            first = false;
            bool constant_term = e.x == 0 && e.y == 0;
            if (!mag.is_one() || constant_term) os << mag.str() << (constant_term ? "" : "*");
            bool need_star = false;
            if (e.x > 0) {
                os << xv;
                if (e.x > 1) os << "^" << e.x;
                need_star = true;
            }
            if (e.y > 0) {
                if (need_star) os << "*";
                os << yv;
                if (e.y > 1) os << "^" << e.y;
            }
        }
        if (first) os << "0";
        return os.str();
    }

private:
    TermMap terms_;
};

/**
 * Caches powers of x(t) and y(t) so that several polynomials can be pulled
 * back along the same pair without recomputation.
 */
class PowerCache {
public:
    PowerCache(TruncatedSeries x, TruncatedSeries y, int bound = kExactTrunc)
        : bound_(bound) {
        xp_.push_back(TruncatedSeries::constant(1));
        yp_.push_back(TruncatedSeries::constant(1));
        x_ = std::move(x);
        y_ = std::move(y);
    }

    const TruncatedSeries& x_pow(int a) { return get(xp_, x_, a); }
    const TruncatedSeries& y_pow(int b) { return get(yp_, y_, b); }

    /// p(x(t), y(t)).
    TruncatedSeries eval(const BivariatePoly& p) {
        TruncatedSeries r = TruncatedSeries(bound_);
        for (const auto& [e, c] : p.terms()) r = r + c * (x_pow(e.x) * y_pow(e.y)).truncated(bound_);
        return r;
    }

private:
    const TruncatedSeries& get(std::vector<TruncatedSeries>& cache, const TruncatedSeries& base, int n) {
        while (static_cast<int>(cache.size()) <= n) cache.push_back((cache.back() * base).truncated(bound_));
        return cache[static_cast<size_t>(n)];
    }

    int bound_;
    TruncatedSeries x_, y_;
    std::vector<TruncatedSeries> xp_, yp_;
};

/// Substitution p(x(t), y(t)) with truncation tracked through every product.
inline TruncatedSeries poly_eval_at_param(const BivariatePoly& p, const TruncatedSeries& x, const TruncatedSeries& y) {
    PowerCache cache(x, y);
    return cache.eval(p);
}

}  // namespace branchform
