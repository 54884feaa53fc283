#pragma once

/**
 * @file normal_form.hpp
 * @brief Reduction of a branch of multiplicity <= 4 to its normal form
 *     x = t^v0,  y = t^v1 + b t^lambda + sum a_i t^i  (i > lambda, i + v0 not in Lambda),
 * identification of its family, Tjurina number, and the homothety action
 * deciding equivalence of normal forms.
 *
 * Reduction. With x held at t^v0, a vector field P d/dX + Q d/dY moves y by
 *     F(y) = Q(x, y) - P(x, y) y' / x',
 * and x' F(y) is the pullback of Q dX - P dY, so the orders that F can reach
 * are exactly Lambda - v0. Exponents are cleaned from below: for each
 * i + v0 in Lambda an exact linear solve finds a field whose F vanishes
 * between v1 and i and cancels the t^i coefficient, and y is replaced by
 * the exact time-1 flow of dy/de = F(y). Only fields of positive weighted
 * degree are used, so the flow fixes every coefficient below i.
 *
 * Homothety. t -> r t, X -> r^v0 X, Y -> r^v1 Y multiplies the coefficient
 * at t^i by r^(i - v1). Over C this always makes b = 1; when the rescaled
 * moduli would leave Q the coefficient b is kept and stored.
 */

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "family.hpp"
#include "lambda_set.hpp"
#include "linalg.hpp"
#include "valuation.hpp"

namespace branchform {

struct NormalForm {
    FamilyId family;
    std::optional<int> lambda;
    /// Coefficient of t^lambda; 1 except when no rational homothety reaches 1.
    Rational lambda_coeff = 1;
    /// Nonzero coefficients at exponents above lambda.
    std::map<int, Rational> coeffs;
    ValueSemigroup gamma;
    ValueSet lambda_set;
    int tjurina = 0;

    int v0() const { return gamma.multiplicity(); }
    int v1() const { return gamma.multiplicity() == 1 ? 1 : gamma.v(1); }

    PuiseuxParam param() const {
        TruncatedSeries y = TruncatedSeries::monomial(1, v1());
        if (lambda) y.add_term(*lambda, lambda_coeff);
        for (const auto& [e, c] : coeffs) y.add_term(e, c);
        return {TruncatedSeries::monomial(1, v0()), y};
    }

    std::string str() const { return param().str(); }
};

namespace detail {

struct FieldTerm {
    int a;
    int b;
    Rational coeff;
};

/// Applies the time-1 flow of dy/de = Q(x,y) - P(x,y) y'/x' to y, x = t^v0, modulo t^trunc.
inline TruncatedSeries flow_time_one(const TruncatedSeries& y, int v0, const std::vector<FieldTerm>& q_terms,
                                     const std::vector<FieldTerm>& p_terms, int trunc) {
    int max_b = 0;
    for (const auto& f : q_terms) max_b = std::max(max_b, f.b);
    for (const auto& f : p_terms) max_b = std::max(max_b, f.b);
    // steps[n] = T_n with y(e) = sum e^n T_n; pow[b][n] = [e^n] y(e)^b.
    std::vector<TruncatedSeries> steps{y.truncated(trunc)};
    std::vector<std::vector<TruncatedSeries>> pow(static_cast<size_t>(max_b + 1));
    std::vector<TruncatedSeries> dsteps{steps[0].derivative()};
    TruncatedSeries result = steps[0];
    for (int n = 0; n < trunc; ++n) {
        pow[0].push_back(n == 0 ? TruncatedSeries::constant(1) : TruncatedSeries(kExactTrunc));
        for (int b = 1; b <= max_b; ++b) {
            TruncatedSeries acc(trunc);
            for (int m = 0; m <= n; ++m) {
                const TruncatedSeries& lhs = pow[static_cast<size_t>(b - 1)][static_cast<size_t>(m)];
                if (lhs.is_zero() || steps[static_cast<size_t>(n - m)].is_zero()) continue;
                acc += (lhs * steps[static_cast<size_t>(n - m)]).truncated(trunc);
            }
            pow[static_cast<size_t>(b)].push_back(acc);
        }
        TruncatedSeries fq(trunc), fp(trunc + v0);
        for (const auto& f : q_terms)
            fq += f.coeff * pow[static_cast<size_t>(f.b)][static_cast<size_t>(n)].shifted(f.a * v0).truncated(trunc);
        for (const auto& f : p_terms) {
            // [e^n] y^b y' = sum_m pow[b][m] T'_(n-m).
            TruncatedSeries acc(trunc + v0);
            for (int m = 0; m <= n; ++m) {
                const TruncatedSeries& lhs = pow[static_cast<size_t>(f.b)][static_cast<size_t>(m)];
                if (lhs.is_zero() || dsteps[static_cast<size_t>(n - m)].is_zero()) continue;
                acc += (lhs * dsteps[static_cast<size_t>(n - m)]).shifted(f.a * v0).truncated(trunc + v0);
            }
            fp += f.coeff * acc;
        }
        TruncatedSeries next = fq - Rational(1, v0) * fp.divided_by_t(v0 - 1);
        next = Rational(1, n + 1) * next.truncated(trunc);
        if (next.is_zero() && next.trunc() >= trunc) {
            // Every later step is built from this one and vanishes as well.
            break;
        }
        steps.push_back(next);
        dsteps.push_back(next.derivative());
        result += next;
    }
    return result.truncated(trunc);
}

inline Error stalled(int i, const std::string& why) {
    return Error(ErrorKind::ReductionStalled, "exponent " + std::to_string(i) + ": " + why);
}

/// Cancels the t^i coefficient of y without touching exponents below i.
inline TruncatedSeries kill_term(const TruncatedSeries& y, int v0, int v1, int i, int trunc) {
    // Candidate monomials, by the order of their effect on y: v1 < order <= i.
    std::vector<std::pair<Exponent, bool>> cols;  // bool: Q-term (true) or P-term
    for (int b = 0; b * v1 <= i; ++b)
        for (int a = 0; a * v0 + b * v1 <= i + v0; ++a) {
            int w = a * v0 + b * v1;
            if (w - v1 >= 1 && w - v1 <= i - v1) cols.push_back({{a, b}, true});
            if (w - v0 >= 1 && w - v0 <= i - v1) cols.push_back({{a, b}, false});
        }
    if (cols.empty()) throw stalled(i, "no tangent direction reaches this order");
    TruncatedSeries yi = y.truncated(i + 1);
    TruncatedSeries dy = y.derivative();
    PowerCache cache(TruncatedSeries::monomial(1, v0), yi, i + 1);
    const int rows = i - v1;
    DenseMatrix m(static_cast<size_t>(rows), std::vector<Rational>(cols.size()));
    for (size_t col = 0; col < cols.size(); ++col) {
        auto [e, is_q] = cols[col];
        TruncatedSeries mono = cache.x_pow(e.x) * cache.y_pow(e.y);
        TruncatedSeries effect =
            is_q ? mono : -Rational(1, v0) * (mono * dy).truncated(i + v0).divided_by_t(v0 - 1);
        for (int r = 0; r < rows; ++r) m[static_cast<size_t>(r)][col] = effect.coeff(v1 + 1 + r);
    }
    std::vector<Rational> rhs(static_cast<size_t>(rows));
    rhs.back() = -y.coeff(i);
    auto sol = solve_linear(m, rhs);
    if (!sol) throw stalled(i, "t^" + std::to_string(i) + " is not in the tangent space");
    std::vector<FieldTerm> q_terms, p_terms;
    for (size_t col = 0; col < cols.size(); ++col) {
        if ((*sol)[col].is_zero()) continue;
        auto [e, is_q] = cols[col];
        (is_q ? q_terms : p_terms).push_back({e.x, e.y, (*sol)[col]});
    }
    TruncatedSeries out = flow_time_one(y, v0, q_terms, p_terms, trunc);
    for (int e = v1; e < i; ++e)
        if (out.coeff(e) != y.coeff(e)) throw stalled(i, "flow changed t^" + std::to_string(e));
    if (!out.coeff(i).is_zero()) throw stalled(i, "flow did not cancel the coefficient");
    return out;
}

/// Integer kernel basis of the row vector e and Bezout coefficients x with x . e = gcd(e).
struct LatticeData {
    long gcd = 0;
    std::vector<long> bezout;
    std::vector<std::vector<long>> kernel;
};

inline LatticeData integer_relations(const std::vector<long>& e) {
    size_t m = e.size();
    std::vector<long> w = e;
    std::vector<std::vector<long>> u(m, std::vector<long>(m, 0));  // columns of a unimodular matrix
    for (size_t k = 0; k < m; ++k) u[k][k] = 1;
    auto col_sub = [&](size_t dst, size_t src, long f) {
        w[dst] -= f * w[src];
        for (size_t r = 0; r < m; ++r) u[dst][r] -= f * u[src][r];
    };
    for (size_t k = 1; k < m; ++k) {
        while (w[k] != 0) {
            col_sub(0, k, w[0] / w[k]);
            std::swap(w[0], w[k]);
            std::swap(u[0], u[k]);
        }
    }
    if (w[0] < 0) {
        w[0] = -w[0];
        for (auto& x : u[0]) x = -x;
    }
    LatticeData d;
    d.gcd = w[0];
    d.bezout = u[0];
    for (size_t k = 1; k < m; ++k) d.kernel.push_back(u[k]);
    return d;
}

inline Rational product_of_powers(const std::vector<Rational>& base, const std::vector<long>& exps) {
    Rational r = 1;
    for (size_t k = 0; k < base.size(); ++k)
        if (exps[k] != 0) r *= base[k].pow(exps[k]);
    return r;
}

/**
 * Rescales y = t^v1 + b t^lambda + sum a_i t^i so that b = 1 when a homothety
 * keeping every coefficient rational allows it, and otherwise as close as the
 * n-th power part of 1/b permits.
 */
inline void normalize_lambda_coeff(int v1, int lambda, Rational& b, std::map<int, Rational>& coeffs) {
    long n = lambda - v1;
    long g = std::labs(n);
    for (const auto& [e, c] : coeffs) g = std::gcd(g, static_cast<long>(e - v1));
    long big_n = n / g;
    // r^g = sigma with b sigma^big_n = 1.
    Rational target = b.inverse();
    Rational sigma;
    if (auto root = rational_root(target, std::labs(big_n))) {
        sigma = big_n > 0 ? *root : root->inverse();
    } else {
        Rational s = nth_power_part(target, std::labs(big_n));
        if (std::labs(big_n) % 2 == 1 && target.sign() < 0) s = -s;
        sigma = big_n > 0 ? s : s.inverse();
    }
    b *= sigma.pow(big_n);
    for (auto& [e, c] : coeffs) c *= sigma.pow((e - v1) / g);
}

}  // namespace detail

/**
 * Family of a branch already in normal shape, given its Lambda.
 * Throws NoMatchingRow when the computed Lambda \ Gamma disagrees with the
 * closed form of the matched row.
 */
inline FamilyId classify(const PuiseuxParam& shaped, const ValueSemigroup& s, const ValueSet& lam) {
    int v0 = s.multiplicity();
    std::optional<int> lambda = zariski_lambda(lam);
    FamilyId f{s, Row::Smooth};
    if (v0 == 1) return f;
    int v1 = s.v(1);
    auto no_row = [&](const std::string& why) {
        return Error(ErrorKind::NoMatchingRow, s.str() + ", " + shaped.str() + ": " + why);
    };
    if (v0 == 2) {
        f.row = Row::Mult2;
    } else if (v0 == 3) {
        if (!lambda) {
            f.row = Row::Mult3Monomial;
        } else {
            if ((2 * v1 - *lambda) % 3 != 0) throw no_row("lambda is not of the form 2 v1 - 3j");
            f = {s, Row::Mult3Lambda, (2 * v1 - *lambda) / 3};
        }
    } else if (v0 == 4 && s.genus() == 2) {
        f.row = Row::Mult4ThreeGen;
        if (lambda != s.v(2) - v1) throw no_row("three-generator branch with lambda != v2 - v1");
    } else if (v0 == 4) {
        int q = v1 / 4;
        if (!lambda) {
            f.row = Row::Mult4Monomial;
        } else if ((3 * v1 - *lambda) % 4 == 0) {
            f = {s, Row::Mult4CaseA, (3 * v1 - *lambda) / 4};
        } else if ((2 * v1 - *lambda) % 4 == 0) {
            int j = (2 * v1 - *lambda) / 4;
            auto slot = [&](int i) { return shaped.y.coeff(3 * v1 - 4 * (q + j + 1 - i)); };
            f = {s, Row::Mult4CaseB2, j};
            for (int i = 1; i <= q - j; ++i)
                if (!slot(i).is_zero()) {
                    f = {s, Row::Mult4CaseB1, j, i};
                    break;
                }
            if (f.row == Row::Mult4CaseB2) {
                Rational b = shaped.y.coeff(*lambda);
                if (slot(q - j + 1) == case_b_critical_value(v1, j) * b * b) f.row = Row::Mult4CaseB3;
            }
        } else {
            throw no_row("lambda is not an admissible value");
        }
    } else {
        throw Error(ErrorKind::UnsupportedMultiplicity, "multiplicity " + std::to_string(v0) + " > 4");
    }
    try {
        validate_family(f);
    } catch (const Error& e) {
        throw no_row(e.what());
    }
    if (closed_form_lambda_minus_gamma(f) != lam.minus_gamma())
        throw no_row("computed Lambda \\ Gamma differs from the closed form of " + f.row_str());
    return f;
}

inline FamilyId classify(const PuiseuxParam& shaped) {
    PuiseuxParam phi = normalize_param(shaped);
    ValueSemigroup s = semigroup_of(phi);
    return classify(phi, s, lambda_echelon(phi, s));
}

/// c - |Lambda \ Gamma|.
inline int tjurina(const NormalForm& nf) {
    return nf.gamma.conductor() - static_cast<int>(nf.lambda_set.minus_gamma().size());
}

/**
 * Normal form of a branch of multiplicity <= 4. The parametrization must be
 * known up to t^c at least (c the conductor); anything beyond is not used.
 */
namespace detail {

inline NormalForm reduce_at(const PuiseuxParam& input, int exact_trunc) {
    PuiseuxParam phi = normalize_param(input, exact_trunc);
    int v0 = phi.v0();
    if (v0 > 4) throw Error(ErrorKind::UnsupportedMultiplicity, "multiplicity " + std::to_string(v0) + " > 4");
    NormalForm nf;
    nf.gamma = semigroup_of(phi);
    if (v0 == 1) {
        nf.lambda_set = ValueSet{{}, 0, nf.gamma};
        nf.family = {nf.gamma, Row::Smooth};
        nf.tjurina = 0;
        return nf;
    }
    int v1 = phi.v1();
    int c = nf.gamma.conductor();
    nf.lambda_set = lambda_echelon(phi, nf.gamma);
    nf.lambda = zariski_lambda(nf.lambda_set);
    const int top = c - v0;  // t^i with i >= c - v0 lies in Lambda - v0
    TruncatedSeries y = phi.y.truncated(std::max(top, v1 + 1));
    if (y.trunc() < top) throw Error(ErrorKind::TruncationTooSmall, "reduction needs y up to t^" + std::to_string(top));
    for (int i = v1 + 1; i < top; ++i) {
        if (y.coeff(i).is_zero() || (nf.lambda && i == *nf.lambda)) continue;
        bool removable = nf.lambda_set.contains(i + v0);
        if (!removable && nf.lambda && i < *nf.lambda)
            throw detail::stalled(i, "term below lambda with i + v0 outside Lambda");
        if (!removable) {
            if (!nf.lambda) throw detail::stalled(i, "term with i + v0 outside Lambda although Lambda = Gamma");
            continue;
        }
        y = detail::kill_term(y, v0, v1, i, top);
    }
    if (nf.lambda) {
        nf.lambda_coeff = y.coeff(*nf.lambda);
        if (nf.lambda_coeff.is_zero()) throw detail::stalled(*nf.lambda, "coefficient of t^lambda vanished");
        for (const auto& [e, cf] : y.terms())
            if (e > *nf.lambda) nf.coeffs[e] = cf;
        detail::normalize_lambda_coeff(v1, *nf.lambda, nf.lambda_coeff, nf.coeffs);
    }
    nf.family = classify(nf.param(), nf.gamma, nf.lambda_set);
    nf.tjurina = tjurina(nf);
    return nf;
}

}  // namespace detail

inline NormalForm reduce(const PuiseuxParam& input) {
    // Exact input only gets cut when x needs a reparametrization; cut deeper if that was too early.
    bool exact = input.x.is_exact() && input.y.is_exact();
    int exact_trunc = 0;
    for (;;) {
        try {
            return detail::reduce_at(input, exact_trunc);
        } catch (const Error& e) {
            bool retry = e.kind() == ErrorKind::TruncationTooSmall || e.kind() == ErrorKind::AmbiguousOrder;
            if (!exact || !retry || exact_trunc > 4096) throw;
            exact_trunc = exact_trunc == 0 ? 8 * input.y.order().value_or(input.x.order().value_or(1)) + 16
                                           : 2 * exact_trunc;
        }
    }
}

/// One homothety r with a2_i = r^(i - v1) a1_i and b2 = r^(lambda - v1) b1.
struct HomothetyWitness {
    /// r^g = beta.
    long g = 1;
    Rational beta = 1;
    /// When b1 = b2: r = exp(2 pi i u / n).
    std::optional<std::pair<long, long>> root_of_unity;

    std::string str() const {
        if (root_of_unity)
            return "r = exp(2*pi*i*" + std::to_string(root_of_unity->first) + "/" +
                   std::to_string(root_of_unity->second) + ")";
        return "r^" + std::to_string(g) + " = " + beta.str();
    }
};

struct EquivalenceResult {
    bool equivalent = false;
    std::string reason;
    std::optional<HomothetyWitness> witness;
};

namespace detail {

inline void require_normal_form(const NormalForm& nf) {
    if (nf.lambda && *nf.lambda == nf.v1()) throw Error(ErrorKind::NotNormalForm, "lambda equals v1");
    if (nf.lambda && nf.lambda_coeff.is_zero()) throw Error(ErrorKind::NotNormalForm, "zero coefficient at t^lambda");
    for (const auto& [e, c] : nf.coeffs) {
        if (!nf.lambda || e <= *nf.lambda) throw Error(ErrorKind::NotNormalForm, "coefficient below lambda");
        if (nf.lambda_set.contains(e + nf.v0()))
            throw Error(ErrorKind::NotNormalForm, "coefficient at t^" + std::to_string(e) + " is removable");
    }
}

/// u in [0, n) with exp(2 pi i u d / n) = ratio (+1 or -1) for every (d, ratio).
inline std::optional<long> root_of_unity_exponent(long n, const std::vector<std::pair<long, Rational>>& conditions) {
    for (long u = 0; u < n; ++u) {
        bool ok = true;
        for (const auto& [d, ratio] : conditions) {
            long r = ((u * d) % n + n) % n;
            if (ratio == Rational(1)) ok = r == 0;
            else if (ratio == Rational(-1)) ok = n % 2 == 0 && r == n / 2;
            else ok = false;
            if (!ok) break;
        }
        if (ok) return u;
    }
    return std::nullopt;
}

}  // namespace detail

/// Whether nf2 is the image of nf1 under a homothety of the family.
inline EquivalenceResult equivalent(const NormalForm& nf1, const NormalForm& nf2) {
    detail::require_normal_form(nf1);
    detail::require_normal_form(nf2);
    if (!(nf1.gamma == nf2.gamma)) return {false, "different semigroup", std::nullopt};
    if (!(nf1.lambda_set == nf2.lambda_set)) return {false, "different Lambda", std::nullopt};
    if (!(nf1.family == nf2.family)) return {false, "different family", std::nullopt};
    if (!nf1.lambda) return {true, "", HomothetyWitness{}};
    std::vector<long> exps{*nf1.lambda - nf1.v1()};
    std::vector<Rational> ratios{nf2.lambda_coeff / nf1.lambda_coeff};
    std::vector<std::pair<long, Rational>> conditions;
    std::set<int> support;
    for (const auto& [e, c] : nf1.coeffs) support.insert(e);
    for (const auto& [e, c] : nf2.coeffs) support.insert(e);
    for (int e : support) {
        auto it1 = nf1.coeffs.find(e);
        auto it2 = nf2.coeffs.find(e);
        if (it1 == nf1.coeffs.end() || it2 == nf2.coeffs.end()) return {false, "no homothety", std::nullopt};
        exps.push_back(e - nf1.v1());
        ratios.push_back(it2->second / it1->second);
        conditions.push_back({e - nf1.v1(), ratios.back()});
    }
    detail::LatticeData lat = detail::integer_relations(exps);
    for (const auto& k : lat.kernel)
        if (!detail::product_of_powers(ratios, k).is_one()) return {false, "no homothety", std::nullopt};
    HomothetyWitness w;
    w.g = lat.gcd;
    w.beta = detail::product_of_powers(ratios, lat.bezout);
    if (ratios[0].is_one()) {
        long n = std::labs(exps[0]);
        if (auto u = detail::root_of_unity_exponent(n, conditions)) w.root_of_unity = std::make_pair(*u, n);
    }
    return {true, "", w};
}

/// Image of nf under r = exp(2 pi i u / |lambda - v1|); every coefficient must stay rational.
inline NormalForm apply_homothety(const NormalForm& nf, long u) {
    NormalForm out = nf;
    if (!nf.lambda) return out;
    long n = std::labs(*nf.lambda - nf.v1());
    for (auto& [e, c] : out.coeffs) {
        long r = ((u * (e - nf.v1())) % n + n) % n;
        if (r == 0) continue;
        if (n % 2 == 0 && r == n / 2) {
            c = -c;
            continue;
        }
        throw Error(ErrorKind::NotNormalForm, "homothety takes t^" + std::to_string(e) + " outside the rationals");
    }
    return out;
}

namespace detail {

/// Roots of unity of order |lambda - v1| that keep every coefficient rational.
inline std::vector<long> rational_orbit_exponents(const NormalForm& nf) {
    std::vector<long> out;
    if (!nf.lambda) return {0};
    long n = std::labs(*nf.lambda - nf.v1());
    for (long u = 0; u < n; ++u) {
        bool ok = true;
        for (const auto& [e, c] : nf.coeffs) {
            long r = ((u * (e - nf.v1())) % n + n) % n;
            if (r != 0 && !(n % 2 == 0 && r == n / 2)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(u);
    }
    return out;
}

}  // namespace detail

/// Orbit representative with the lexicographically smallest coefficient tuple (by exponent).
inline NormalForm canonicalize(const NormalForm& nf) {
    NormalForm best = nf;
    for (long u : detail::rational_orbit_exponents(nf)) {
        NormalForm img = apply_homothety(nf, u);
        if (std::lexicographical_compare(img.coeffs.begin(), img.coeffs.end(), best.coeffs.begin(), best.coeffs.end(),
                                         [](const auto& a, const auto& b) {
                                             return a.first != b.first ? a.first < b.first : a.second < b.second;
                                         }))
            best = img;
    }
    return best;
}

}  // namespace branchform
