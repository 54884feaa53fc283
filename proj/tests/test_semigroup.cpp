#include <gtest/gtest.h>

#include "branchform/semigroup.hpp"

using namespace branchform;

namespace {

// Largest non-member found by scanning combinations of the generators.
int brute_force_frobenius(const std::vector<int>& gens) {
    int limit = 4 * gens.back() * gens.front() + 8;
    std::vector<bool> hit(static_cast<size_t>(limit + 1), false);
    hit[0] = true;
    for (int k = 0; k <= limit; ++k) {
        if (!hit[static_cast<size_t>(k)]) continue;
        for (int g : gens)
            if (k + g <= limit) hit[static_cast<size_t>(k + g)] = true;
    }
    int last = -1;
    for (int k = 0; k <= limit; ++k)
        if (!hit[static_cast<size_t>(k)]) last = k;
    return last;
}

}  // namespace

TEST(Semigroup, ConductorExamples) {
    EXPECT_EQ(make_semigroup({2, 7}).conductor(), 6);
    EXPECT_EQ(make_semigroup({3, 7}).conductor(), 12);
    EXPECT_EQ(make_semigroup({4, 9}).conductor(), 24);
    EXPECT_EQ(make_semigroup({4, 6, 13}).conductor(), 16);
    EXPECT_EQ(make_semigroup({1}).conductor(), 0);
}

TEST(Semigroup, Membership) {
    ValueSemigroup s = make_semigroup({4, 9});
    EXPECT_TRUE(s.is_member(13));
    EXPECT_FALSE(s.is_member(14));
    EXPECT_TRUE(s.is_member(24));
    EXPECT_FALSE(s.is_member(23));
    EXPECT_FALSE(s.is_member(-1));
}

TEST(Semigroup, Gaps) {
    EXPECT_EQ(make_semigroup({3, 7}).gaps_above(7), (std::vector<int>{8, 11}));
    EXPECT_EQ(make_semigroup({4, 9}).gaps_above(9), (std::vector<int>{10, 11, 14, 15, 19, 23}));
    EXPECT_EQ(make_semigroup({2, 5}).gaps(), (std::vector<int>{1, 3}));
}

TEST(Semigroup, AdmissibleLambdas) {
    EXPECT_EQ(make_semigroup({4, 9}).admissible_lambdas(), (std::vector<int>{10, 11, 15, 19}));
    EXPECT_TRUE(make_semigroup({2, 7}).admissible_lambdas().empty());
    EXPECT_EQ(make_semigroup({4, 6, 13}).admissible_lambdas(), (std::vector<int>{7}));
    EXPECT_THROW(make_semigroup({5, 7}).admissible_lambdas(), Error);
}

TEST(Semigroup, Errors) {
    auto kind_of = [](std::vector<int> g) {
        try {
            make_semigroup(std::move(g));
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::ParseError;
    };
    EXPECT_EQ(kind_of({4, 4}), ErrorKind::NotMinimalGenerators);
    EXPECT_EQ(kind_of({4, 8}), ErrorKind::NotCoprime);
    EXPECT_EQ(kind_of({4, 6, 8, 13}), ErrorKind::NotMinimalGenerators);
    EXPECT_EQ(kind_of({4, 6, 11}), ErrorKind::InadmissiblePlaneBranchSemigroup);
    EXPECT_EQ(kind_of({}), ErrorKind::NotMinimalGenerators);
}

TEST(Semigroup, ConductorMatchesBruteForce) {
    for (int v0 = 2; v0 <= 4; ++v0)
        for (int v1 = v0 + 1; v1 <= 40; ++v1) {
            if (v1 % v0 == 0) continue;
            if (std::gcd(v0, v1) == 1) {
                ValueSemigroup s = make_semigroup({v0, v1});
                EXPECT_EQ(s.conductor(), 1 + brute_force_frobenius({v0, v1})) << s.str();
                if (v0 == 4) {
                    EXPECT_EQ(static_cast<int>(s.gaps_above(v1).size()), v1 / 4 + v1 / 2) << s.str();
                }
            } else if (v0 == 4) {
                for (int v2 = 2 * v1 + 1; v2 <= 3 * v1; v2 += 2) {
                    ValueSemigroup s = make_semigroup({4, v1, v2});
                    EXPECT_EQ(s.conductor(), 1 + brute_force_frobenius({4, v1, v2})) << s.str();
                }
            }
        }
}

TEST(Semigroup, GapsAndMembersPartition) {
    ValueSemigroup s = make_semigroup({4, 10, 23});
    std::vector<int> gaps = s.gaps();
    std::vector<int> members = s.members_up_to(s.conductor() - 1);
    EXPECT_EQ(gaps.size() + members.size(), static_cast<size_t>(s.conductor()));
    for (int g : gaps) EXPECT_FALSE(s.is_member(g));
    for (int l : s.admissible_lambdas()) {
        EXPECT_FALSE(s.is_member(l));
        EXPECT_GT(l, s.v(1));
    }
}
