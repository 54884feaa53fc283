#pragma once

/**
 * @file puiseux.hpp
 * @brief Newton-Puiseux expansion of a plane branch f(X, Y) = 0 with
 * rational coefficients.
 *
 * With n = ord_Y f(0, Y) the branch is x = a t^n (a = 1 unless the leading
 * coefficient forces otherwise) and y is a power series root of
 * f(a t^n, Y). Each step reads one edge of the Newton polygon of the current
 * cluster of roots, whose edge polynomial must be L (c^q - beta)^r.
 */

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bivariate.hpp"
#include "valuation.hpp"

namespace branchform {

struct CurveEquation {
    BivariatePoly f;
    int y_degree = 0;

    /// Checks that f passes through the origin and is Y-general; records ord_Y f(0, Y).
    static CurveEquation prepare(const BivariatePoly& f) {
        if (f.is_zero()) throw Error(ErrorKind::NotIrreducibleAtOrigin, "the zero polynomial defines no branch");
        if (!f.coeff(0, 0).is_zero())
            throw Error(ErrorKind::NotIrreducibleAtOrigin, "f(0,0) != 0: the curve misses the origin");
        int n = -1;
        for (const auto& [e, c] : f.terms())
            if (e.x == 0 && (n < 0 || e.y < n)) n = e.y;
        if (n < 0) throw Error(ErrorKind::NotYGeneral, "X divides " + f.str());
        return {f, n};
    }
};

namespace detail {

/// Polynomial in t; exponents at or above the cap are dropped.
struct CappedPoly {
    std::map<int, Rational> terms;
};

class NewtonPuiseux {
public:
    /// Thrown when the q-th root at the very first edge is not rational.
    struct FirstEdgeIrrational {
        Rational beta;
        int q;
        int exponent;
    };

    NewtonPuiseux(const CurveEquation& eq, int trunc, const Rational& a) : n_(eq.y_degree), trunc_(trunc) {
        cap_ = n_ * (trunc + 1) + 1;
        int deg = eq.f.max_y_degree();
        g_.assign(static_cast<size_t>(deg + 1), {});
        for (const auto& [e, c] : eq.f.terms()) {
            int te = e.x * n_;
            if (te < cap_) add(g_[static_cast<size_t>(e.y)], te, c * a.pow(e.x));
            else lossy_ = true;
        }
    }

    /// y(t) up to t^trunc, as an exponent -> coefficient map.
    std::map<int, Rational> run() {
        std::map<int, Rational> y;
        solve(g_, n_, 0, y, true);
        return y;
    }

    bool lossy() const { return lossy_; }
    bool exact_root() const { return exact_root_; }

private:
    using Coeffs = std::vector<CappedPoly>;

    static void add(CappedPoly& p, int e, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = p.terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) p.terms.erase(it);
        }
    }

    static std::optional<int> ord(const CappedPoly& p) {
        if (p.terms.empty()) return std::nullopt;
        return p.terms.begin()->first;
    }

    /// G_k <- sum_{j >= k} C(j, k) G_j (c t^e)^(j - k).
    Coeffs shift(const Coeffs& g, const Rational& c, int e) {
        size_t deg = g.size();
        Coeffs out(deg);
        for (size_t j = 0; j < deg; ++j) {
            if (g[j].terms.empty()) continue;
            Rational binom = 1;
            Rational cpow = 1;
            for (size_t k = j + 1; k-- > 0;) {
                // Contribution of G_j to G_k: C(j, k) c^(j-k) t^(e (j-k)).
                size_t p = j - k;
                if (p > 0) {
                    binom = binom * Rational(static_cast<long>(k + 1)) / Rational(static_cast<long>(p));
                    cpow = cpow * c;
                }
                int sh = e * static_cast<int>(p);
                Rational f = binom * cpow;
                for (const auto& [te, tc] : g[j].terms) {
                    if (te + sh >= cap_) {
                        lossy_ = true;
                        break;
                    }
                    add(out[k], te + sh, f * tc);
                }
            }
        }
        return out;
    }

    /// Coefficients P_j of the edge polynomial; returns (q, beta) with P = L (c^q - beta)^r.
    static std::optional<std::pair<int, Rational>> split_edge(const std::vector<Rational>& p, int m) {
        const Rational& lead = p[static_cast<size_t>(m)];
        for (int q = 1; q <= m; ++q) {
            if (m % q != 0) continue;
            int r = m / q;
            Rational beta = -p[static_cast<size_t>(m - q)] / (Rational(r) * lead);
            if (beta.is_zero()) continue;
            // Expand L (c^q - beta)^r and compare.
            std::vector<Rational> expect(static_cast<size_t>(m + 1));
            Rational binom = 1;
            for (int i = 0; i <= r; ++i) {
                if (i > 0) binom = binom * Rational(r - i + 1) / Rational(i);
                expect[static_cast<size_t>(q * (r - i))] = lead * binom * (-beta).pow(i);
            }
            if (expect == p) return std::make_pair(q, beta);
        }
        return std::nullopt;
    }

    void solve(const Coeffs& g, int m, int e_prev, std::map<int, Rational>& y, bool first) {
        auto om = ord(g[static_cast<size_t>(m)]);
        if (!om) throw Error(ErrorKind::AmbiguousOrder, "Newton polygon vertex lost to truncation");
        auto o0 = ord(g[0]);
        if (!o0) {
            exact_root_ = !lossy_;
            if (m > 1 && exact_root_)
                throw Error(ErrorKind::NotIrreducibleAtOrigin, "repeated root: f is not reduced at the origin");
            return;
        }
        int rise = *o0 - *om;
        if (rise <= 0 || rise % m != 0) {
            if (rise > 0 && rise >= m * trunc_) return;
            throw Error(ErrorKind::NotIrreducibleAtOrigin,
                        "Newton polygon edge of non-integral slope: more than one branch at the origin");
        }
        int e = rise / m;
        if (e <= e_prev) throw Error(ErrorKind::NotIrreducibleAtOrigin, "Newton polygon is not a single edge");
        if (e >= trunc_) return;
        std::vector<Rational> p(static_cast<size_t>(m + 1));
        for (int j = 0; j <= m; ++j) {
            auto oj = ord(g[static_cast<size_t>(j)]);
            if (!oj) continue;
            long line = static_cast<long>(*o0) - static_cast<long>(j) * e;
            if (*oj < line)
                throw Error(ErrorKind::NotIrreducibleAtOrigin, "Newton polygon has several edges: several branches");
            if (*oj == line) p[static_cast<size_t>(j)] = g[static_cast<size_t>(j)].terms.begin()->second;
        }
        auto edge = split_edge(p, m);
        if (!edge)
            throw Error(ErrorKind::NotIrreducibleAtOrigin,
                        "edge polynomial at t^" + std::to_string(e) + " has several root orbits");
        auto [q, beta] = *edge;
        // Rotations t -> zeta t permute the roots of one branch transitively.
        if (q != m / std::gcd(m, e))
            throw Error(ErrorKind::NotIrreducibleAtOrigin,
                        "edge polynomial at t^" + std::to_string(e) + " splits: several branches");
        int r = m / q;
        std::vector<Rational> candidates;
        if (auto root = rational_root(beta, q)) {
            candidates.push_back(*root);
            if (q % 2 == 0) candidates.push_back(-*root);
        }
        if (candidates.empty()) {
            if (first) throw FirstEdgeIrrational{beta, q, e};
            throw Error(ErrorKind::NonRationalExpansion,
                        "coefficient of t^" + std::to_string(e) + " is a root of " + minimal_polynomial(q, beta));
        }
        std::optional<Error> last;
        for (const Rational& c : candidates) {
            std::map<int, Rational> attempt = y;
            attempt[e] = c;
            try {
                solve(shift(g, c, e), r, e, attempt, false);
                y = std::move(attempt);
                return;
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::NonRationalExpansion) throw;
                last = err;
            }
        }
        throw *last;
    }

public:
    static std::string minimal_polynomial(int q, const Rational& beta) {
        std::string s = "c";
        if (q > 1) s += "^" + std::to_string(q);
        s += beta.sign() < 0 ? " + " + (-beta).str() : " - " + beta.str();
        return s;
    }

private:
    int n_;
    int trunc_;
    int cap_;
    bool lossy_ = false;
    bool exact_root_ = false;
    Coeffs g_;
};

}  // namespace detail

/**
 * A parametrization (a t^n, y(t)) of the branch f = 0 with f(x, y) = 0 mod t^trunc.
 * x = t^n whenever that admits rational coefficients.
 */
inline PuiseuxParam expand(const CurveEquation& eq, int trunc) {
    int n = eq.y_degree;
    Rational a = 1;
    std::map<int, Rational> y;
    bool exact = false;
    for (int attempt = 0;; ++attempt) {
        detail::NewtonPuiseux np(eq, trunc, a);
        try {
            y = np.run();
            exact = np.exact_root();
            break;
        } catch (const detail::NewtonPuiseux::FirstEdgeIrrational& irr) {
            // Rescale x so that beta a^(e/d) becomes a q-th power: u (e/d) = 1 mod q.
            if (attempt > 0) throw Error(ErrorKind::NonRationalExpansion, "no rational leading coefficient");
            int d = n / irr.q;
            int ed = irr.exponent / d;
            if (std::gcd(ed, irr.q) != 1)
                throw Error(ErrorKind::NotIrreducibleAtOrigin,
                            "leading coefficients are conjugate roots of " +
                                detail::NewtonPuiseux::minimal_polynomial(irr.q, irr.beta) + ": several branches");
            int u = 1;
            while ((static_cast<long>(u) * ed) % irr.q != 1 % irr.q) ++u;
            a = irr.beta.pow(-u);
        }
    }
    TruncatedSeries ys(exact ? kExactTrunc : trunc);
    for (const auto& [e, c] : y) ys.add_term(e, c);
    PuiseuxParam phi{TruncatedSeries::monomial(a, n), ys};
    if (n > 1 && support_gcd(phi) != 1) {
        if (exact) throw Error(ErrorKind::NotIrreducibleAtOrigin, "expansion is not primitive: f is not a branch");
        throw Error(ErrorKind::AmbiguousOrder,
                    "expansion is not primitive below t^" + std::to_string(trunc) + "; increase the truncation");
    }
    return phi;
}

/// f(x(t), y(t)) = 0 up to the truncation of the pullback.
inline bool verify_expansion(const CurveEquation& eq, const PuiseuxParam& phi) {
    return pullback(eq.f, phi).is_zero();
}

}  // namespace branchform
