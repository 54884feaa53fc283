#pragma once

/**
 * @file series.hpp
 * @brief Sparse univariate power series in t, truncated at an explicit order.
 *
 * A TruncatedSeries with truncation N stands for every power series whose
 * coefficients below N are the stored ones; nothing is known at exponents
 * >= N. Exact polynomials use the sentinel truncation kExactTrunc.
 *
 * Truncation bookkeeping:
 *  - sum:        min(Na, Nb)
 *  - product:    min(Na + ord(b), Nb + ord(a)), where ord is the order of
 *                the known part, or the truncation itself when the known part
 *                is zero. This is the tightest bound valid for all
 *                completions of both factors.
 *  - derivative: N - 1
 */

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace branchform {

inline constexpr int kExactTrunc = 1 << 28;

class TruncatedSeries {
public:
    using TermMap = std::map<int, Rational>;

    TruncatedSeries() = default;
    explicit TruncatedSeries(int trunc) : trunc_(clamp_trunc(trunc)) {}

    TruncatedSeries(TermMap terms, int trunc) : trunc_(clamp_trunc(trunc)) {
        for (auto& [e, c] : terms) {
            if (e < 0) throw std::domain_error("negative exponent in power series");
            if (e < trunc_ && !c.is_zero()) terms_.emplace(e, std::move(c));
        }
    }

    static TruncatedSeries monomial(const Rational& coeff, int exponent, int trunc = kExactTrunc) {
        TruncatedSeries s(trunc);
        s.add_term(exponent, coeff);
        return s;
    }

    static TruncatedSeries constant(const Rational& c, int trunc = kExactTrunc) { return monomial(c, 0, trunc); }

    int trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExactTrunc; }
    const TermMap& terms() const { return terms_; }

    /// True when no nonzero coefficient is known (the series is O(t^trunc)).
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Least exponent with a nonzero coefficient; nullopt means "no term below trunc".
    std::optional<int> order() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    /// Order, signalling AmbiguousOrder when the known part vanishes.
    int order_or_throw(const char* context = "series") const {
        if (terms_.empty()) {
            throw Error(ErrorKind::AmbiguousOrder,
                        std::string(context) + " vanishes up to t^" + std::to_string(trunc_));
        }
        return terms_.begin()->first;
    }

    /// Order of the known part, or the truncation when it is zero.
    int effective_order() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

    const Rational& leading_coeff() const {
        if (terms_.empty()) throw Error(ErrorKind::AmbiguousOrder, "leading coefficient of a vanishing series");
        return terms_.begin()->second;
    }

    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.rbegin()->first;
    }

    void add_term(int e, const Rational& c) {
        if (e < 0) throw std::domain_error("negative exponent in power series");
        if (e >= trunc_ || c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Lowers the truncation (never raises it).
    TruncatedSeries truncated(int trunc) const {
        TruncatedSeries r(std::min(trunc, trunc_));
        for (auto it = terms_.begin(); it != terms_.end() && it->first < r.trunc_; ++it) r.terms_.insert(*it);
        return r;
    }

    /// Keeps only the exponents below `bound` and declares the result exact.
    TruncatedSeries polynomial_part(int bound) const {
        if (bound > trunc_) throw Error(ErrorKind::TruncationTooSmall, "polynomial part beyond truncation");
        TruncatedSeries r(kExactTrunc);
        for (auto it = terms_.begin(); it != terms_.end() && it->first < bound; ++it) r.terms_.insert(*it);
        return r;
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(trunc_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.trunc_, b.trunc_));
        for (const auto& [e, c] : a.terms_) r.add_term(e, c);
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        long ta = static_cast<long>(a.trunc_) + b.effective_order();
        long tb = static_cast<long>(b.trunc_) + a.effective_order();
        TruncatedSeries r(static_cast<int>(std::min<long>(std::min(ta, tb), kExactTrunc)));
        for (const auto& [ea, ca] : a.terms_) {
            if (ea + b.effective_order() >= r.trunc_) break;
            for (const auto& [eb, cb] : b.terms_) {
                if (ea + eb >= r.trunc_) break;
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }

    friend TruncatedSeries operator*(const Rational& s, const TruncatedSeries& a) {
        TruncatedSeries r(a.trunc_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this = *this - o; }

    /// Multiplication by t^k.
    TruncatedSeries shifted(int k) const {
        if (k < 0) return divided_by_t(-k);
        TruncatedSeries r(std::min(trunc_ + k, kExactTrunc));
        for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
        return r;
    }

    /// Exact division by t^k; every known term must have exponent >= k.
    TruncatedSeries divided_by_t(int k) const {
        if (k > trunc_) throw Error(ErrorKind::TruncationTooSmall, "division by t^k beyond truncation");
        if (!terms_.empty() && terms_.begin()->first < k) throw std::domain_error("series not divisible by t^k");
        TruncatedSeries r(is_exact() ? kExactTrunc : trunc_ - k);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e - k, c);
        return r;
    }

    TruncatedSeries derivative() const {
        TruncatedSeries r(is_exact() ? kExactTrunc : std::max(trunc_ - 1, 0));
        for (const auto& [e, c] : terms_) {
            if (e > 0) r.add_term(e - 1, Rational(e) * c);
        }
        return r;
    }

    TruncatedSeries pow(int n) const {
        if (n < 0) throw std::domain_error("negative power of a series");
        TruncatedSeries result = constant(1, kExactTrunc);
        TruncatedSeries base = *this;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return result;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

    /// Same known coefficients below the common truncation.
    bool agrees_with(const TruncatedSeries& o) const {
        int t = std::min(trunc_, o.trunc_);
        return truncated(t).terms_ == o.truncated(t).terms_;
    }

    std::string str(const char* var = "t") const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0) os << "-";
            } else {
                os << (c.sign() < 0 ? " - " : " + ");
            }
            first = false;
            if (e == 0) {
                os << mag.str();
                continue;
            }
            if (!mag.is_one()) os << mag.str() << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
        if (first) os << "0";
        if (!is_exact()) os << " + O(" << var << "^" << trunc_ << ")";
        return os.str();
    }

private:
    static int clamp_trunc(int t) { return std::clamp(t, 0, kExactTrunc); }

    TermMap terms_;
    int trunc_ = kExactTrunc;
};

/**
 * u^alpha for a series with constant term 1, via u * P' = alpha * u' * P.
 * Result is known to the truncation of u (capped at `bound` for exact inputs).
 */
inline TruncatedSeries unit_power(const TruncatedSeries& u, const Rational& alpha, int bound) {
    if (u.coeff(0) != Rational(1)) throw std::domain_error("unit_power needs constant term 1");
    int n_max = std::min(u.trunc(), bound);
    std::vector<Rational> p(static_cast<size_t>(std::max(n_max, 0)));
    std::vector<std::pair<int, Rational>> uterms;
    for (const auto& [e, c] : u.terms()) {
        if (e > 0) uterms.emplace_back(e, c);
    }
    if (n_max > 0) p[0] = 1;
    Rational alpha1 = alpha + Rational(1);
    for (int n = 1; n < n_max; ++n) {
        Rational acc;
        for (const auto& [k, uk] : uterms) {
            if (k > n) break;
            const Rational& pk = p[static_cast<size_t>(n - k)];
            if (pk.is_zero()) continue;
            acc += (alpha1 * Rational(k) - Rational(n)) * uk * pk;
        }
        p[static_cast<size_t>(n)] = acc / Rational(n);
    }
    TruncatedSeries r(n_max);
    for (int n = 0; n < n_max; ++n) r.add_term(n, p[static_cast<size_t>(n)]);
    return r;
}

/// f(g(t)) for ord(g) >= 1, truncated no further than `bound`.
inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g, int bound) {
    int og = g.order_or_throw("inner series of a composition");
    if (og < 1) throw std::domain_error("composition needs an inner series without constant term");
    long limit = bound;
    if (!f.is_exact()) limit = std::min<long>(limit, static_cast<long>(f.trunc()) * og);
    TruncatedSeries result(static_cast<int>(limit));
    result.add_term(0, f.coeff(0));
    TruncatedSeries power = TruncatedSeries::constant(1);
    int k_prev = 0;
    for (const auto& [k, fk] : f.terms()) {
        if (k == 0) continue;
        if (static_cast<long>(k) * og >= result.trunc()) break;
        for (; k_prev < k; ++k_prev) power = (power * g).truncated(result.trunc());
        result = result + fk * power;
    }
    return result.truncated(static_cast<int>(limit));
}

}  // namespace branchform
