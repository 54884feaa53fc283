#pragma once

/**
 * @file valuation.hpp
 * @brief Parametrizations of plane branches, the pullback phi^* and the
 * valuation v_phi on functions and on 1-forms.
 *
 * For a 1-form w = g dX + h dY the valuation is
 *     v_phi(w) = ord_t( g(x,y) x' + h(x,y) y' ) + 1,
 * so that v_phi(dp) = v_phi(p) in characteristic zero.
 */

#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "bivariate.hpp"
#include "linalg.hpp"
#include "semigroup.hpp"

namespace branchform {

struct PuiseuxParam {
    TruncatedSeries x;
    TruncatedSeries y;

    int trunc() const { return std::min(x.trunc(), y.trunc()); }
    int v0() const { return x.order_or_throw("x(t)"); }
    int v1() const { return y.order_or_throw("y(t)"); }

    PuiseuxParam truncated(int n) const { return {x.truncated(n), y.truncated(n)}; }

    /// x = t^v0 exactly, y monic of order v1 > v0 with v0 not dividing v1 (any y when v0 = 1).
    bool is_normalized() const {
        if (x.terms().size() != 1 || !x.leading_coeff().is_one() || !x.is_exact()) return false;
        int m = x.terms().begin()->first;
        if (m == 1) return true;
        if (!y.order()) return false;
        return *y.order() > m && *y.order() % m != 0 && y.leading_coeff().is_one();
    }

    std::string str() const { return "x = " + x.str() + "; y = " + y.str(); }

    /// Parseable form "x=...; y=..." of the known parts.
    std::string param_string() const {
        auto strip = [](const TruncatedSeries& s) { return s.truncated(s.trunc()).polynomial_part(s.trunc()).str(); };
        return "x=" + strip(x) + "; y=" + strip(y);
    }

    friend bool operator==(const PuiseuxParam&, const PuiseuxParam&) = default;
};

/// The 1-form g dX + h dY.
struct DifferentialForm {
    BivariatePoly g;
    BivariatePoly h;

    static DifferentialForm exact(const BivariatePoly& p) { return {p.d_dx(), p.d_dy()}; }

    friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
        return {a.g + b.g, a.h + b.h};
    }
    friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
        return {a.g - b.g, a.h - b.h};
    }
    friend DifferentialForm operator*(const BivariatePoly& p, const DifferentialForm& w) { return {p * w.g, p * w.h}; }
    friend DifferentialForm operator*(const Rational& s, const DifferentialForm& w) { return {s * w.g, s * w.h}; }

    bool is_zero() const { return g.is_zero() && h.is_zero(); }

    std::string str() const {
        std::ostringstream os;
        os << "(" << g.str() << ") dX + (" << h.str() << ") dY";
        return os.str();
    }
};

/// phi^*(p) = p(x(t), y(t)).
inline TruncatedSeries pullback(const BivariatePoly& p, const PuiseuxParam& phi) {
    return poly_eval_at_param(p, phi.x, phi.y);
}

/// phi^*(w)/dt = g(x,y) x' + h(x,y) y'.
inline TruncatedSeries pullback(const DifferentialForm& w, const PuiseuxParam& phi) {
    PowerCache cache(phi.x, phi.y);
    return cache.eval(w.g) * phi.x.derivative() + cache.eval(w.h) * phi.y.derivative();
}

inline int v_phi_function(const BivariatePoly& p, const PuiseuxParam& phi) {
    if (p.is_zero()) throw std::domain_error("valuation of the zero function");
    return pullback(p, phi).order_or_throw("phi^*(p)");
}

inline int v_phi_differential(const DifferentialForm& w, const PuiseuxParam& phi) {
    if (w.is_zero()) throw std::domain_error("valuation of the zero form");
    return pullback(w, phi).order_or_throw("phi^*(w)") + 1;
}

namespace detail {

/**
 * Reparametrizes so that x becomes exactly s^v0, given x = t^v0 * u(t) with u(0) = 1.
 * With s = t * u^(1/v0), Lagrange inversion gives
 *     [s^n] y(t(s)) = (1/n) [t^(n-1)] y'(t) * u(t)^(-n/v0).
 */
inline TruncatedSeries reparametrize_to_monomial_x(const TruncatedSeries& x, const TruncatedSeries& y, int v0,
                                                  int exact_trunc) {
    TruncatedSeries u = x.divided_by_t(v0);
    long tnew = y.trunc();
    if (!x.is_exact()) tnew = std::min<long>(tnew, static_cast<long>(x.trunc()) - v0 + 1);
    if (tnew >= kExactTrunc) tnew = exact_trunc;
    TruncatedSeries dy = y.derivative();
    TruncatedSeries out(static_cast<int>(tnew));
    for (int n = 1; n < tnew; ++n) {
        TruncatedSeries phi_n = unit_power(u, Rational(-n, v0), n);
        Rational acc;
        for (const auto& [k, c] : dy.terms()) {
            if (k > n - 1) break;
            Rational p = phi_n.coeff(n - 1 - k);
            if (!p.is_zero()) acc += c * p;
        }
        out.add_term(n, acc / Rational(n));
    }
    return out;
}

}  // namespace detail

/**
 * Returns an A-equivalent parametrization with x = t^v0 exactly and y monic of
 * order v1, v0 not dividing v1. Coordinates are swapped, and multiples of x
 * (more generally of x^k) are removed from y, when needed.
 *
 * When x is not a monomial the result is a series; if the input was exact it
 * is cut at `exact_trunc` (default 4 v1 + 8, enough for multiplicity <= 4).
 */
inline PuiseuxParam normalize_param(PuiseuxParam phi, int exact_trunc = 0) {
    if (phi.is_normalized()) return phi;
    auto ox = phi.x.order();
    auto oy = phi.y.order();
    if (!ox && !oy) throw Error(ErrorKind::NotNormalizable, "both components vanish up to truncation");
    if ((ox && *ox == 0) || (oy && *oy == 0))
        throw Error(ErrorKind::NotNormalizable, "parametrization does not pass through the origin");
    for (int guard = 0; guard < 64; ++guard) {
        ox = phi.x.order();
        oy = phi.y.order();
        if (!ox || (oy && *oy < *ox)) {
            std::swap(phi.x, phi.y);
            continue;
        }
        if (oy && *oy == *ox) {
            phi.y = phi.y - (phi.y.leading_coeff() / phi.x.leading_coeff()) * phi.x;
            continue;
        }
        break;
    }
    int v0 = phi.x.order_or_throw("x(t)");
    phi.x = phi.x.leading_coeff().inverse() * phi.x;
    if (phi.x.terms().size() != 1 || !phi.x.is_exact()) {
        if (exact_trunc <= 0) exact_trunc = 4 * phi.y.order_or_throw("y(t)") + 8;
        phi.y = detail::reparametrize_to_monomial_x(phi.x, phi.y, v0, exact_trunc);
    }
    phi.x = TruncatedSeries::monomial(1, v0);
    if (v0 == 1) {
        if (phi.y.order()) phi.y = phi.y.leading_coeff().inverse() * phi.y;
        return phi;
    }
    while (auto o = phi.y.order()) {
        if (*o % v0 != 0) break;
        phi.y = phi.y - TruncatedSeries::monomial(phi.y.leading_coeff(), *o);
    }
    if (!phi.y.order()) {
        if (phi.y.is_exact()) throw Error(ErrorKind::NotPrimitive, "y(t) is a power series in t^" + std::to_string(v0));
        throw Error(ErrorKind::AmbiguousOrder, "y(t) has no exponent prime to v0 below the truncation");
    }
    phi.y = phi.y.leading_coeff().inverse() * phi.y;
    return phi;
}

/// gcd of v0 and every exponent of y; 1 for a primitive parametrization.
inline int support_gcd(const PuiseuxParam& phi) {
    int g = phi.x.order_or_throw("x(t)");
    for (const auto& [e, c] : phi.y.terms()) g = std::gcd(g, e);
    return g;
}

/**
 * For a normalized branch with v0 = 4 and gcd(4, v1) = 2: the function
 * z = Y^2 - X^(v1/2) - (corrections) whose value is the third generator v2.
 * Corrections subtract monomials X^a Y^b (b <= 1) while the value stays in <4, v1>.
 */
inline std::pair<BivariatePoly, int> third_generator_function(const PuiseuxParam& phi) {
    int v0 = phi.v0();
    int v1 = phi.v1();
    if (v0 != 4 || std::gcd(v0, v1) != 2) throw std::domain_error("third generator needs v0 = 4 and gcd(4, v1) = 2");
    BivariatePoly z = BivariatePoly::monomial(1, 0, 2) - BivariatePoly::monomial(1, v1 / 2, 0);
    PowerCache cache(phi.x, phi.y);
    for (int guard = 0; guard < 4 * phi.trunc() + 8; ++guard) {
        TruncatedSeries s = cache.eval(z);
        int o = s.order_or_throw("phi^*(y^2 - x^m1)");
        if (o % 2 != 0) return {z, o};
        int b = (o % 4 == 0) ? 0 : 1;
        int a = (o - b * v1) / 4;
        z -= BivariatePoly::monomial(s.leading_coeff(), a, b);
    }
    throw Error(ErrorKind::AmbiguousOrder, "third generator search did not terminate");
}

/**
 * Semigroup of values of a branch of multiplicity <= 4 (or a smooth one).
 * The input is normalized first.
 */
inline ValueSemigroup semigroup_of(const PuiseuxParam& input, int exact_trunc = 0) {
    PuiseuxParam phi = normalize_param(input, exact_trunc);
    int v0 = phi.v0();
    if (v0 == 1) return ValueSemigroup({1});
    if (v0 > 4) throw Error(ErrorKind::UnsupportedMultiplicity, "multiplicity " + std::to_string(v0) + " > 4");
    if (support_gcd(phi) != 1) {
        if (phi.y.is_exact()) throw Error(ErrorKind::NotPrimitive, "parametrization factors through t -> t^k");
        throw Error(ErrorKind::AmbiguousOrder, "no exponent making the parametrization primitive below the truncation");
    }
    int v1 = phi.v1();
    if (std::gcd(v0, v1) == 1) return ValueSemigroup({v0, v1});
    auto [z, v2] = third_generator_function(phi);
    return ValueSemigroup({v0, v1, v2});
}

/**
 * Brute-force Gamma cap [0, bound]: echelon of phi^*(X^a Y^b) over all
 * monomials of weighted degree a v0 + b v1 <= bound. Works at any multiplicity.
 */
inline std::set<int> gamma_echelon(const PuiseuxParam& phi, int bound) {
    int v0 = phi.v0();
    int v1 = phi.v1();
    PowerCache cache(phi.x, phi.y, bound + 1);
    OrderEchelon ech;
    for (int b = 0; b * v1 <= bound; ++b)
        for (int a = 0; a * v0 + b * v1 <= bound; ++a) {
            TruncatedSeries row = (cache.x_pow(a) * cache.y_pow(b)).truncated(bound + 1);
            if (row.trunc() <= bound) throw Error(ErrorKind::TruncationTooSmall, "gamma_echelon needs truncation > bound");
            ech.insert(std::move(row));
        }
    std::set<int> out;
    for (int o : ech.orders())
        if (o <= bound) out.insert(o);
    return out;
}

}  // namespace branchform
