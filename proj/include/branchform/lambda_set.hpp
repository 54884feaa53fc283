#pragma once

/**
 * @file lambda_set.hpp
 * @brief The value set Lambda of Kahler differentials of a branch, the
 * Zariski invariant, and the minimal non-exact differentials in
 * multiplicity 4.
 */

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "family.hpp"
#include "linalg.hpp"
#include "valuation.hpp"

namespace branchform {

/// Lambda, stored by its part below the conductor (every n >= c is a member).
struct ValueSet {
    std::set<int> below_conductor;
    int conductor = 0;
    ValueSemigroup semigroup;

    bool contains(int n) const { return n >= conductor || below_conductor.count(n) != 0; }

    std::set<int> minus_gamma() const {
        std::set<int> out;
        for (int n : below_conductor)
            if (!semigroup.is_member(n)) out.insert(n);
        return out;
    }

    /// "{4,8,9,12,13,14} + [16,inf)".
    std::string str() const {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (int n : below_conductor) {
            os << (first ? "" : ",") << n;
            first = false;
        }
        os << "} + [" << conductor << ",inf)";
        return os.str();
    }

    friend bool operator==(const ValueSet& a, const ValueSet& b) {
        return a.below_conductor == b.below_conductor && a.conductor == b.conductor && a.semigroup == b.semigroup;
    }
};

/**
 * Lambda below the conductor by exact echelon of phi^*(X^a Y^b dX) and
 * phi^*(X^a Y^b dY), a v0 + b v1 <= c. The pullbacks must be known up to
 * t^(c-2), which needs a truncation of at least c on y.
 */
inline ValueSet lambda_echelon(const PuiseuxParam& phi, const ValueSemigroup& s) {
    int c = s.conductor();
    ValueSet out{{}, c, s};
    if (c <= 1) return out;
    int v0 = phi.v0();
    int v1 = phi.v1();
    // ord + 1 < c, so only orders below c - 1 matter.
    const int need = c - 1;
    PowerCache cache(phi.x, phi.y, need);
    TruncatedSeries dx = phi.x.derivative(), dy = phi.y.derivative();
    OrderEchelon ech;
    for (int b = 0; b * v1 <= c; ++b)
        for (int a = 0; a * v0 + b * v1 <= c; ++a) {
            TruncatedSeries mono = cache.x_pow(a) * cache.y_pow(b);
            for (const TruncatedSeries* d : {&dx, &dy}) {
                TruncatedSeries row = mono * *d;
                if (row.trunc() < need)
                    throw Error(ErrorKind::TruncationTooSmall,
                                "Lambda needs the parametrization up to t^" + std::to_string(c) + ", have t^" +
                                    std::to_string(phi.trunc()));
                ech.insert(row.truncated(need));
            }
        }
    for (int o : ech.orders())
        if (o + 1 < c) out.below_conductor.insert(o + 1);
    return out;
}

/// min(Lambda \ Gamma) - v0, or nullopt when Lambda \ Gamma is empty.
inline std::optional<int> zariski_lambda(const ValueSet& lam) {
    std::set<int> extra = lam.minus_gamma();
    if (extra.empty()) return std::nullopt;
    return *extra.begin() - lam.semigroup.multiplicity();
}

struct MnedWitness {
    std::string name;
    DifferentialForm form;
    /// Value predicted by the case analysis.
    int value = 0;
};

namespace detail {

/// x dy - (v1/4) y dx.
inline DifferentialForm omega1(int v1) {
    return {Rational(-v1, 4) * BivariatePoly::Y(), BivariatePoly::X()};
}

inline Error not_normal_shape(const PuiseuxParam& phi, const std::string& why) {
    return Error(ErrorKind::NotInNormalShape, phi.str() + ": " + why);
}

}  // namespace detail

/**
 * Minimal non-exact differentials of a normalized multiplicity-4 branch in
 * the shape of a table family, each with its predicted value.
 * With b the coefficient of t^lambda (1 in the table), the second form is
 * v1 x^(j-1) w1 - (v1 - 4j) b y dy.
 */
inline std::vector<MnedWitness> mned_witnesses(const PuiseuxParam& phi) {
    if (phi.v0() != 4) throw Error(ErrorKind::NotMultiplicityFour, "multiplicity is " + std::to_string(phi.v0()));
    if (!phi.is_normalized()) throw detail::not_normal_shape(phi, "not normalized");
    ValueSemigroup s = semigroup_of(phi);
    int v1 = s.v(1);
    int q = v1 / 4;
    std::optional<int> lam;
    for (const auto& [e, c] : phi.y.terms())
        if (e > v1) {
            lam = e;
            break;
        }
    std::vector<int> admissible = s.admissible_lambdas();
    if (!lam || *lam >= s.conductor() - 4) {
        if (s.genus() == 2) throw detail::not_normal_shape(phi, "three-generator branch without a t^lambda term");
        return {};
    }
    if (std::find(admissible.begin(), admissible.end(), *lam) == admissible.end())
        throw detail::not_normal_shape(phi, "t^" + std::to_string(*lam) + " is not at an admissible lambda");

    DifferentialForm w1 = detail::omega1(v1);
    if (s.genus() == 2) return {{"omega1", w1, s.v(2) + v1 - 4 * (v1 / 2 - 1)}};
    if ((3 * v1 - *lam) % 4 == 0) {
        int j = (3 * v1 - *lam) / 4;
        return {{"omega1", w1, 3 * v1 - 4 * (j - 1)}};
    }
    int j = (2 * v1 - *lam) / 4;
    Rational b = phi.y.coeff(*lam);
    std::vector<MnedWitness> out{{"omega1", w1, 2 * v1 - 4 * (j - 1)}};
    DifferentialForm w2 = Rational(v1) * (BivariatePoly::monomial(1, j - 1, 0) * w1) -
                          DifferentialForm{{}, Rational(v1 - 4 * j) * b * BivariatePoly::Y()};
    auto case_b_exponent = [&](int i) { return 3 * v1 - 4 * (q + j + 1 - i); };
    for (int i = 1; i <= q - j; ++i)
        if (!phi.y.coeff(case_b_exponent(i)).is_zero()) {
            out.push_back({"omega2", w2, 3 * v1 - 4 * (q + 1 - i)});
            return out;
        }
    Rational a = phi.y.coeff(case_b_exponent(q - j + 1));
    if (a != case_b_critical_value(v1, j) * b * b) out.push_back({"omega2", w2, 3 * v1 - 4 * j});
    return out;
}

}  // namespace branchform
