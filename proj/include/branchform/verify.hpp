#pragma once

/**
 * @file verify.hpp
 * @brief Seeded cross-check suite: conductor formula, echelon Lambda against
 * the closed forms, differential witnesses, tau, idempotence, invariance of
 * the normal form under random A-equivalence, and canonicalization.
 *
 * Randomness comes from std::mt19937_64 reduced modulo small ranges, so a seed
 * reproduces the same samples on every platform.
 */

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "family.hpp"
#include "normal_form.hpp"

namespace branchform {

/// Numerator in [-9, 9], denominator in [1, 9].
Rational sample_rational(std::mt19937_64& rng, bool nonzero);

/// Free coefficients for a family template, avoiding its forbidden values.
std::vector<Rational> sample_coefficients(const FamilyTemplate& t, std::mt19937_64& rng);

/// Random branch x = t^v0, y = t^v1 + (random terms below 3 v1), v0 in {3, 4}, v1 <= v1_max.
PuiseuxParam sample_branch(std::mt19937_64& rng, int v1_max);

/**
 * Random A-equivalent branch: (X, Y) -> (aX + bY + p, cY + dX + q) with p, q of
 * order 2, followed by t -> t + e t^2 + f t^3, all cut at t^trunc.
 */
PuiseuxParam sample_perturbation(const PuiseuxParam& phi, std::mt19937_64& rng, int trunc);

/// Semigroups of multiplicity 2..4 with v1 <= v1_max; three generators with v2 <= 3 v1.
std::vector<ValueSemigroup> semigroups_up_to(int v1_max);

struct PropertyResult {
    explicit PropertyResult(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    int checks = 0;
    std::vector<std::string> failures;
    std::vector<std::string> info;
};

struct VerifyOptions {
    int v1_max = 13;
    int samples = 3;
    std::uint64_t seed = 1;
};

PropertyResult check_conductor_formula(int v1_max);
PropertyResult check_lambda_closed_forms(int v1_max, int samples, std::mt19937_64& rng);
PropertyResult check_mned_values(int v1_max, int samples, std::mt19937_64& rng);
/// tau = c - |Lambda \ Gamma| from the echelon; table mismatches go to info.
PropertyResult check_tjurina(int v1_max, int samples, std::mt19937_64& rng);
PropertyResult check_idempotence(int v1_max, std::mt19937_64& rng);
PropertyResult check_invariance(int v1_max, int branches, std::mt19937_64& rng);
PropertyResult check_canonicalize(int v1_max, std::mt19937_64& rng);

std::vector<PropertyResult> run_verification(const VerifyOptions& opts);
std::string render_verification(const VerifyOptions& opts, const std::vector<PropertyResult>& results);

}  // namespace branchform
