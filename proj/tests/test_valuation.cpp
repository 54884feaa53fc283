#include <gtest/gtest.h>

#include <random>

#include "branchform/valuation.hpp"

using namespace branchform;

namespace {

TruncatedSeries S(std::initializer_list<std::pair<int, Rational>> terms, int trunc = kExactTrunc) {
    TruncatedSeries s(trunc);
    for (const auto& [e, c] : terms) s.add_term(e, c);
    return s;
}

PuiseuxParam P(int v0, std::initializer_list<std::pair<int, Rational>> y, int trunc = kExactTrunc) {
    return {TruncatedSeries::monomial(1, v0), S(y, trunc)};
}

const BivariatePoly X = BivariatePoly::X();
const BivariatePoly Y = BivariatePoly::Y();

}  // namespace

TEST(Valuation, FunctionExamples) {
    EXPECT_EQ(v_phi_function(X, P(4, {{9, 1}})), 4);
    EXPECT_EQ(v_phi_function(Y, P(4, {{9, 1}, {10, 1}})), 9);
    EXPECT_EQ(v_phi_function(Y.pow(2) - X.pow(3), P(4, {{6, 1}, {7, 1}})), 13);
}

TEST(Valuation, DifferentialExamples) {
    PuiseuxParam phi = P(4, {{9, 1}});
    EXPECT_EQ(v_phi_differential({BivariatePoly::constant(1), {}}, phi), 4);

    DifferentialForm w1{Rational(-9, 4) * Y, X};
    EXPECT_EQ(v_phi_differential(w1, P(4, {{9, 1}, {11, 1}})), 15);
    EXPECT_EQ(v_phi_differential(w1, P(4, {{9, 1}, {10, 1}, {11, Rational(-1, 2)}})), 14);
}

TEST(Valuation, ExactDifferentialKeepsValue) {
    std::mt19937_64 rng(3);
    PuiseuxParam phi = P(4, {{9, 1}, {10, Rational(-1, 4)}, {11, 2}}, 60);
    for (int iter = 0; iter < 30; ++iter) {
        BivariatePoly p;
        for (int k = 0; k < 3; ++k)
            p.add_term({static_cast<int>(rng() % 4), static_cast<int>(rng() % 3)},
                       Rational(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 5) + 1));
        p -= BivariatePoly::constant(p.coeff(0, 0));
        if (p.is_zero()) continue;
        EXPECT_EQ(v_phi_differential(DifferentialForm::exact(p), phi), v_phi_function(p, phi)) << p.str();
    }
}

TEST(Valuation, IsAValuation) {
    std::mt19937_64 rng(8);
    PuiseuxParam phi = P(3, {{7, 1}, {8, Rational(2, 3)}}, 80);
    auto rnd = [&] {
        BivariatePoly p;
        for (int k = 0; k < 3; ++k)
            p.add_term({static_cast<int>(rng() % 3) + 1, static_cast<int>(rng() % 3)},
                       Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 4) + 1));
        return p.is_zero() ? X : p;
    };
    for (int iter = 0; iter < 40; ++iter) {
        BivariatePoly p = rnd(), q = rnd();
        int vp = v_phi_function(p, phi), vq = v_phi_function(q, phi);
        EXPECT_EQ(v_phi_function(p * q, phi), vp + vq);
        if (!(p + q).is_zero()) {
            int vs = v_phi_function(p + q, phi);
            EXPECT_GE(vs, std::min(vp, vq));
            if (vp != vq) {
                EXPECT_EQ(vs, std::min(vp, vq));
            }
        }
    }
}

TEST(Valuation, SemigroupOf) {
    EXPECT_EQ(semigroup_of(P(4, {{9, 1}})), make_semigroup({4, 9}));
    EXPECT_EQ(semigroup_of(P(4, {{6, 1}, {7, 1}})), make_semigroup({4, 6, 13}));
    EXPECT_EQ(semigroup_of(P(2, {{7, 1}})), make_semigroup({2, 7}));
    EXPECT_EQ(semigroup_of({S({{1, 1}}), S({{1, 1}})}), make_semigroup({1}));
    // Here y^2 - x^3 starts at 2 t^14, which X^2 Y removes before the odd value 15 shows up.
    EXPECT_EQ(semigroup_of(P(4, {{6, 1}, {8, 1}, {9, 1}})).generators().back(), 15);
}

TEST(Valuation, SemigroupErrors) {
    try {
        semigroup_of(P(4, {{6, 1}, {10, 1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPrimitive);
    }
    try {
        semigroup_of(P(5, {{7, 1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedMultiplicity);
    }
}

TEST(Valuation, GammaEchelonExamples) {
    EXPECT_EQ(gamma_echelon(P(4, {{9, 1}}), 24), (std::set<int>{0, 4, 8, 9, 12, 13, 16, 17, 18, 20, 21, 22, 24}));
    EXPECT_EQ(gamma_echelon(P(2, {{5, 1}}), 4), (std::set<int>{0, 2, 4}));
    ValueSemigroup s = make_semigroup({4, 6, 13});
    std::vector<int> m = s.members_up_to(16);
    EXPECT_EQ(gamma_echelon(P(4, {{6, 1}, {7, 1}}), 16), std::set<int>(m.begin(), m.end()));
}

TEST(Valuation, SemigroupAgreesWithEchelon) {
    std::mt19937_64 rng(21);
    for (int v0 = 2; v0 <= 4; ++v0)
        for (int v1 = v0 + 1; v1 <= 25; ++v1) {
            if (v1 % v0 == 0) continue;
            TruncatedSeries y = TruncatedSeries::monomial(1, v1, 80);
            for (int e = v1 + 1; e < v1 + 8; ++e)
                if (rng() % 2) y.add_term(e, Rational(static_cast<long>(rng() % 5) + 1));
            PuiseuxParam phi{TruncatedSeries::monomial(1, v0), y};
            if (support_gcd(phi) != 1) continue;
            ValueSemigroup s = semigroup_of(phi);
            int c = s.conductor();
            if (c + 1 > 80) continue;
            std::vector<int> m = s.members_up_to(c);
            EXPECT_EQ(gamma_echelon(phi, c), std::set<int>(m.begin(), m.end())) << phi.str();
        }
}

TEST(Valuation, NormalizeExamples) {
    PuiseuxParam a = normalize_param({S({{4, 1}, {5, 1}}), S({{9, 1}})});
    EXPECT_EQ(a.x, TruncatedSeries::monomial(1, 4));
    EXPECT_EQ(a.y.order(), 9);
    // t = s - s^2/4 + ..., so t^9 = s^9 - (9/4) s^10 + ...
    EXPECT_EQ(a.y.coeff(10), Rational(-9, 4));
    EXPECT_EQ(a.y.coeff(9), Rational(1));

    PuiseuxParam b = normalize_param(P(4, {{9, 3}}));
    EXPECT_EQ(b, P(4, {{9, 1}}));

    PuiseuxParam c = P(4, {{9, 1}, {10, 1}});
    EXPECT_EQ(normalize_param(c), c);
}

TEST(Valuation, NormalizeSubstitutionIsConsistent) {
    // y(t(s)) with x(t(s)) = s^4 must satisfy the same relations as the input.
    PuiseuxParam in{S({{4, 1}, {5, 1}}, 40), S({{9, 1}}, 40)};
    PuiseuxParam out = normalize_param(in);
    BivariatePoly rel = Y.pow(4) - X.pow(9);
    // Y^4 - X^9 vanishes on (t^4, t^9) only; both sides of the change must agree in value.
    EXPECT_EQ(v_phi_function(rel, out), v_phi_function(rel, in));
    EXPECT_EQ(semigroup_of(out), semigroup_of(in));
}

TEST(Valuation, NormalizeSwapsAndCleans) {
    PuiseuxParam swapped = normalize_param({S({{9, 1}}), S({{4, 2}})});
    EXPECT_EQ(swapped, P(4, {{9, 1}}));
    PuiseuxParam with_x_multiple = normalize_param({S({{4, 1}}), S({{8, 5}, {9, 2}})});
    EXPECT_EQ(with_x_multiple, P(4, {{9, 1}}));
}
