#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers backed by GMP.
 *
 * Values are kept canonical at all times: lowest terms, positive
 * denominator, zero stored as 0/1.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "error.hpp"

namespace branchform {

class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& value) : q_(value) {}  // NOLINT(google-explicit-constructor)

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    /// Parses "p" or "p/q" (optional leading sign).
    static Rational parse(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational literal '" + text + "'");
        if (q.get_den() == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
        q.canonicalize();
        Rational r;
        r.q_ = q;
        return r;
    }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const {
        Rational r;
        r.q_ = -q_;
        return r;
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero rational");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Rational inverse() const { return Rational(1) / *this; }

    /// Integer power, negative exponents allowed for nonzero values.
    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_{0};
};

/// Exact integer n-th root of a non-negative integer, if one exists.
inline std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long n) {
    if (value < 0) return std::nullopt;
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), n) == 0) return std::nullopt;
    return root;
}

/// Rational r with r^n == q, preferring the positive root when n is even.
inline std::optional<Rational> rational_root(const Rational& q, long n) {
    if (n <= 0) throw std::domain_error("root index must be positive");
    if (q.is_zero()) return Rational(0);
    bool negative = q.sign() < 0;
    if (negative && n % 2 == 0) return std::nullopt;
    mpz_class num = q.num();
    if (negative) num = -num;
    auto rn = exact_root(num, static_cast<unsigned long>(n));
    auto rd = exact_root(q.den(), static_cast<unsigned long>(n));
    if (!rn || !rd) return std::nullopt;
    Rational r(*rn, *rd);
    return negative ? -r : r;
}

/**
 * Splits q as w * s^n with s rational and w free of n-th powers of small
 * primes (trial division up to 10^4, then a perfect-power test on the cofactor).
 * Returns s. Deterministic, so equal inputs give equal representatives.
 */
inline Rational nth_power_part(const Rational& q, long n) {
    auto part = [n](mpz_class v) {
        if (v < 0) v = -v;
        mpz_class s = 1;
        for (unsigned long p = 2; p < 10000 && v > 1; ++p) {
            if (mpz_divisible_ui_p(v.get_mpz_t(), p) == 0) continue;
            long e = 0;
            while (mpz_divisible_ui_p(v.get_mpz_t(), p) != 0) {
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
                ++e;
            }
            mpz_class pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e / n));
            s *= pe;
        }
        if (v > 1) {
            if (auto r = exact_root(v, static_cast<unsigned long>(n))) s *= *r;
        }
        return s;
    };
    if (q.is_zero() || n <= 1) return Rational(1);
    return Rational(part(q.num()), part(q.den()));
}

}  // namespace branchform
