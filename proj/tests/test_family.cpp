#include <gtest/gtest.h>

#include <random>

#include "branchform/family.hpp"
#include "branchform/lambda_set.hpp"

using namespace branchform;

namespace {

TruncatedSeries S(std::initializer_list<std::pair<int, Rational>> terms) {
    TruncatedSeries s;
    for (const auto& [e, c] : terms) s.add_term(e, c);
    return s;
}

PuiseuxParam P(int v0, std::initializer_list<std::pair<int, Rational>> y) {
    return {TruncatedSeries::monomial(1, v0), S(y)};
}

std::set<int> lambda_minus_gamma(const PuiseuxParam& phi) {
    ValueSemigroup s = semigroup_of(phi);
    return lambda_echelon(phi, s).minus_gamma();
}

/// Every semigroup of multiplicity 2..4 with v1 <= v1_max (v2 <= 3 v1 when there are three generators).
std::vector<ValueSemigroup> semigroups(int v1_max) {
    std::vector<ValueSemigroup> out;
    for (int v0 = 2; v0 <= 4; ++v0)
        for (int v1 = v0 + 1; v1 <= v1_max; ++v1) {
            if (std::gcd(v0, v1) == 1) out.push_back(make_semigroup({v0, v1}));
            else if (v0 == 4 && v1 % 2 == 0 && v1 % 4 != 0)
                for (int v2 = 2 * v1 + 1; v2 <= 3 * v1; v2 += 2) out.push_back(make_semigroup({4, v1, v2}));
        }
    return out;
}

Rational small_rational(std::mt19937_64& rng, bool nonzero) {
    for (;;) {
        long num = static_cast<long>(rng() % 19) - 9;
        long den = static_cast<long>(rng() % 9) + 1;
        if (num != 0 || !nonzero) return Rational(num, den);
    }
}

std::vector<Rational> random_coefficients(const FamilyTemplate& t, std::mt19937_64& rng) {
    std::vector<Rational> out;
    for (int e : t.free_exponents) {
        Rational c = small_rational(rng, t.nonzero_exponent == e);
        if (t.forbidden && t.forbidden->first == e && c == t.forbidden->second) c += 1;
        out.push_back(c);
    }
    return out;
}

}  // namespace

TEST(Family, EnumerationForFourNine) {
    std::vector<FamilyId> rows = enumerate_families(make_semigroup({4, 9}));
    std::vector<std::string> names;
    for (const auto& f : rows) names.push_back(f.row_str());
    EXPECT_EQ(names, (std::vector<std::string>{"MULT4_MONOMIAL", "MULT4_CASE_A(j=2)", "MULT4_CASE_A(j=3)",
                                               "MULT4_CASE_A(j=4)", "MULT4_CASE_B2(j=2)", "MULT4_CASE_B3(j=2)"}));
    EXPECT_EQ(enumerate_families(make_semigroup({4, 6, 13})).size(), 1u);
    EXPECT_EQ(enumerate_families(make_semigroup({3, 7})).size(), 2u);
    EXPECT_EQ(family_lambda(enumerate_families(make_semigroup({3, 7}))[1]), 8);
}

TEST(Family, ClosedFormExamples) {
    ValueSemigroup s = make_semigroup({4, 9});
    EXPECT_EQ(closed_form_lambda_minus_gamma({s, Row::Mult4CaseA, 4}), (std::set<int>{15, 19, 23}));
    ValueSemigroup s13 = make_semigroup({4, 13});
    EXPECT_EQ(closed_form_lambda_minus_gamma({s13, Row::Mult4CaseB1, 2, 1}), (std::set<int>{22, 27, 31, 35}));
    EXPECT_EQ(closed_form_lambda_minus_gamma({make_semigroup({4, 6, 13}), Row::Mult4ThreeGen}),
              (std::set<int>{11, 15}));
}

TEST(Family, TableTjurinaExamples) {
    EXPECT_EQ(table_tjurina({make_semigroup({2, 7}), Row::Mult2}), 6);
    EXPECT_EQ(table_tjurina({make_semigroup({3, 7}), Row::Mult3Monomial}), 12);
    EXPECT_EQ(table_tjurina({make_semigroup({4, 9}), Row::Mult4CaseA, 4}), 21);
    EXPECT_EQ(table_tjurina({make_semigroup({4, 6, 13}), Row::Mult4ThreeGen}), 14);
}

TEST(Family, ValidationRejectsOutOfRange) {
    ValueSemigroup s = make_semigroup({4, 9});
    for (const FamilyId& f : {FamilyId{s, Row::Mult4CaseA, 1}, FamilyId{s, Row::Mult4CaseA, 5},
                              FamilyId{s, Row::Mult4CaseB1, 2, 1}, FamilyId{s, Row::Mult3Lambda, 2},
                              FamilyId{s, Row::Mult4ThreeGen}, FamilyId{s, Row::Mult4Monomial, 2}}) {
        try {
            validate_family(f);
            ADD_FAILURE() << f.row_str();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidFamilyParameters);
        }
    }
}

TEST(Family, Templates) {
    ValueSemigroup s = make_semigroup({4, 13});
    FamilyTemplate b3 = family_template({s, Row::Mult4CaseB3, 2});
    EXPECT_EQ(b3.fixed.at(18), Rational(1));
    EXPECT_EQ(b3.fixed.at(23), Rational(31, 26));
    EXPECT_EQ(b3.free_exponents, (std::vector<int>{27}));
    FamilyTemplate b1 = family_template({s, Row::Mult4CaseB1, 2, 1});
    EXPECT_EQ(b1.free_exponents, (std::vector<int>{19}));
    EXPECT_EQ(b1.nonzero_exponent, 19);
    EXPECT_EQ(instantiate({s, Row::Mult4CaseB1, 2, 1}, {Rational(2)}), P(4, {{13, 1}, {18, 1}, {19, 2}}));
    EXPECT_THROW(instantiate({s, Row::Mult4CaseB1, 2, 1}, {Rational(0)}), Error);
    EXPECT_THROW(instantiate({make_semigroup({4, 9}), Row::Mult4CaseB2, 2}, {}), Error);
}

TEST(Family, Strata) {
    StratumDescription point = moduli_stratum({make_semigroup({4, 6, 13}), Row::Mult4ThreeGen});
    EXPECT_EQ(point.dimension, 0);
    StratumDescription big = moduli_stratum({make_semigroup({4, 14, 31}), Row::Mult4ThreeGen});
    EXPECT_EQ(big.dimension, 2);
    EXPECT_EQ(big.group_order, 3);
    StratumDescription b3 = moduli_stratum({make_semigroup({4, 17}), Row::Mult4CaseB3, 3});
    EXPECT_EQ(b3.dimension, 2);
    EXPECT_EQ(b3.exponents, (std::vector<int>{31, 35}));
    EXPECT_EQ(b3.weights, (std::vector<int>{14, 18}));
}

TEST(LambdaSet, WorkedExamples) {
    EXPECT_TRUE(lambda_minus_gamma(P(4, {{9, 1}})).empty());
    PuiseuxParam f = P(4, {{9, 1}, {10, 1}, {11, Rational(-1, 2)}});
    ValueSet lf = lambda_echelon(f, semigroup_of(f));
    EXPECT_EQ(lf.str(), "{4,8,9,12,13,14,16,17,18,19,20,21,22,23} + [24,inf)");
    EXPECT_EQ(lf.minus_gamma(), (std::set<int>{14, 19, 23}));
    EXPECT_EQ(zariski_lambda(lf), 10);
    PuiseuxParam g = P(4, {{9, 1}, {11, 1}});
    EXPECT_EQ(lambda_minus_gamma(g), (std::set<int>{15, 19, 23}));
    EXPECT_EQ(lambda_minus_gamma(P(4, {{6, 1}, {7, 1}})), (std::set<int>{11, 15}));
    EXPECT_TRUE(lambda_minus_gamma(P(2, {{7, 1}})).empty());
    EXPECT_EQ(lambda_minus_gamma(P(3, {{7, 1}, {8, 1}})), (std::set<int>{11}));
}

TEST(LambdaSet, NeedsEnoughTerms) {
    TruncatedSeries y = TruncatedSeries::monomial(1, 9, 20);
    PuiseuxParam phi{TruncatedSeries::monomial(1, 4), y};
    EXPECT_THROW(lambda_echelon(phi, make_semigroup({4, 9})), Error);
}

TEST(LambdaSet, MnedExamples) {
    PuiseuxParam g = P(4, {{9, 1}, {11, 1}});
    auto wg = mned_witnesses(g);
    ASSERT_EQ(wg.size(), 1u);
    EXPECT_EQ(wg[0].value, 15);
    EXPECT_EQ(v_phi_differential(wg[0].form, g), 15);

    PuiseuxParam f = P(4, {{9, 1}, {10, 1}, {11, Rational(-1, 2)}});
    auto wf = mned_witnesses(f);
    ASSERT_EQ(wf.size(), 2u);
    EXPECT_EQ(wf[0].value, 14);
    EXPECT_EQ(wf[1].value, 19);
    for (const auto& w : wf) EXPECT_EQ(v_phi_differential(w.form, f), w.value) << w.name;

    PuiseuxParam h = P(4, {{6, 1}, {7, 1}});
    auto wh = mned_witnesses(h);
    ASSERT_EQ(wh.size(), 1u);
    EXPECT_EQ(v_phi_differential(wh[0].form, h), 11);
    // 2 y dy - 3 x^2 dx = d(y^2 - x^3) is exact: its value is v(z) = 13.
    DifferentialForm dz = DifferentialForm::exact(BivariatePoly::Y().pow(2) - BivariatePoly::X().pow(3));
    EXPECT_EQ(v_phi_differential(dz, h), 13);

    EXPECT_THROW(mned_witnesses(P(3, {{7, 1}})), Error);
    EXPECT_TRUE(mned_witnesses(P(4, {{9, 1}})).empty());
}

// Echelon Lambda \ Gamma against the closed form for every family with v1 <= 25.
TEST(LambdaSet, ClosedFormMatchesEchelonEverywhere) {
    std::mt19937_64 rng(20240611);
    int instances = 0;
    for (const ValueSemigroup& s : semigroups(25)) {
        if (s.multiplicity() == 2 && s.v(1) > 15) continue;
        for (const FamilyId& f : enumerate_families(s)) {
            FamilyTemplate t = family_template(f);
            int samples = t.free_exponents.empty() ? 1 : 3;
            for (int n = 0; n < samples; ++n) {
                PuiseuxParam phi = instantiate(f, random_coefficients(t, rng));
                ASSERT_EQ(lambda_minus_gamma(phi), closed_form_lambda_minus_gamma(f)) << f.str() << " " << phi.str();
                ++instances;
                if (s.multiplicity() != 4) continue;
                for (const MnedWitness& w : mned_witnesses(phi))
                    ASSERT_EQ(v_phi_differential(w.form, phi), w.value) << f.str() << " " << w.name << " " << phi.str();
            }
        }
    }
    EXPECT_GT(instances, 500);
}

TEST(LambdaSet, TableTjurinaOnlyDiffersOnFirstCaseB) {
    for (const ValueSemigroup& s : semigroups(25))
        for (const FamilyId& f : enumerate_families(s)) {
            if (f.row == Row::Mult4CaseB1) {
                EXPECT_EQ(table_tjurina(f) - closed_form_tjurina(f), f.j) << f.str();
            } else {
                EXPECT_EQ(table_tjurina(f), closed_form_tjurina(f)) << f.str();
            }
        }
}
