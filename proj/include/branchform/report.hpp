#pragma once

/**
 * @file report.hpp
 * @brief The classification pipeline behind the command line:
 * parse -> (expand) -> normalize -> Gamma -> Lambda -> reduce -> classify,
 * with text and JSON renderings.
 */

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "family.hpp"
#include "normal_form.hpp"
#include "puiseux.hpp"

namespace branchform {

enum class InputKind { Polynomial, Parametrization };

struct BranchInput {
    std::string text;
    InputKind kind = InputKind::Parametrization;
};

/// Picks the kind from the text: "x=...; y=..." or "(.., ..)" is a parametrization.
BranchInput detect_input(const std::string& text);

struct ClassificationReport {
    BranchInput input;
    /// Newton-Puiseux expansion used (polynomial input only).
    std::optional<PuiseuxParam> expansion;
    NormalForm nf;
    int table_tjurina = 0;
    StratumDescription stratum;

    bool tjurina_agrees() const { return table_tjurina == nf.tjurina; }
};

/// Starting truncation for polynomial input when none is given.
constexpr int kDefaultTrunc = 32;
/// Automatic truncation stops doubling here.
constexpr int kMaxAutoTrunc = 1024;

/**
 * Runs the whole pipeline. With `trunc` unset, a polynomial is expanded from
 * kDefaultTrunc terms upward, doubling while the branch is not determined.
 */
ClassificationReport classify_input(const BranchInput& input, std::optional<int> trunc = std::nullopt);

/// Expansion only, with the truncation actually used.
PuiseuxParam expand_polynomial(const std::string& text, int trunc);

std::string render_text(const ClassificationReport& r);
nlohmann::ordered_json to_json(const ClassificationReport& r);

nlohmann::ordered_json rational_json(const Rational& q);
nlohmann::ordered_json series_json(const TruncatedSeries& s);

struct EquivalenceReport {
    ClassificationReport first;
    ClassificationReport second;
    EquivalenceResult result;
};

EquivalenceReport compare_inputs(const BranchInput& a, const BranchInput& b, std::optional<int> trunc);
std::string render_text(const EquivalenceReport& r);
nlohmann::ordered_json to_json(const EquivalenceReport& r);

/// Every family over the semigroup with its template, Lambda \ Gamma, tau and stratum.
std::string render_table_text(const ValueSemigroup& s);
nlohmann::ordered_json table_json(const ValueSemigroup& s);

}  // namespace branchform
