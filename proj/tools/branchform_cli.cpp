#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "branchform/parse.hpp"
#include "branchform/report.hpp"
#include "branchform/verify.hpp"

using namespace branchform;

namespace {

enum Exit { kOk = 0, kNegative = 1, kBadInput = 2, kNonRational = 3, kUnsupported = 4, kInternal = 5 };

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonRationalExpansion: return kNonRational;
        case ErrorKind::UnsupportedMultiplicity: return kUnsupported;
        case ErrorKind::ReductionStalled:
        case ErrorKind::NoMatchingRow:
        case ErrorKind::NotNormalForm:
        case ErrorKind::NotInNormalShape:
        case ErrorKind::NotMultiplicityFour: return kInternal;
        default: return kBadInput;
    }
}

struct InputFlags {
    std::vector<std::string> polys;
    std::vector<std::string> params;
    std::vector<std::string> positional;

    void attach(CLI::App* cmd, bool several) {
        auto* p = cmd->add_option("--poly", polys, "curve equation f(X, Y), e.g. \"Y^4 - X^9 + X^7*Y\"");
        auto* q = cmd->add_option("--param", params, "parametrization, e.g. \"x=t^4; y=t^9+t^11\"");
        auto* r = cmd->add_option("input", positional, "branch given either way (kind detected from the text)");
        if (!several) {
            p->expected(1);
            q->expected(1);
            r->expected(0, 1);
        }
    }

    std::vector<BranchInput> collect() const {
        std::vector<BranchInput> out;
        for (const auto& s : positional) out.push_back(detect_input(s));
        for (const auto& s : params) out.push_back({s, InputKind::Parametrization});
        for (const auto& s : polys) out.push_back({s, InputKind::Polynomial});
        return out;
    }
};

std::optional<int> trunc_flag(int trunc) { return trunc > 0 ? std::optional<int>(trunc) : std::nullopt; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal forms of plane branches of multiplicity at most 4"};
    app.require_subcommand(1);
    bool json = false;
    int trunc = 0;

    InputFlags classify_in;
    auto* classify = app.add_subcommand("classify", "full classification report for one branch");
    classify_in.attach(classify, false);
    classify->add_flag("--json", json, "machine-readable output");
    classify->add_option("--trunc", trunc, "truncation order (default: automatic)")->check(CLI::PositiveNumber);

    InputFlags equiv_in;
    auto* equiv = app.add_subcommand("equiv", "decide whether two branches are equivalent");
    equiv_in.attach(equiv, true);
    equiv->add_flag("--json", json, "machine-readable output");
    equiv->add_option("--trunc", trunc, "truncation order (default: automatic)")->check(CLI::PositiveNumber);

    std::vector<int> generators;
    auto* table = app.add_subcommand("table", "every family over a semigroup");
    table->add_option("generators", generators, "minimal generators, e.g. 4 9")->required();
    table->add_flag("--json", json, "machine-readable output");

    std::string expand_poly;
    int expand_trunc = 16;
    auto* expand_cmd = app.add_subcommand("expand", "Newton-Puiseux expansion of f(X, Y) = 0");
    expand_cmd->add_option("--poly,poly", expand_poly, "curve equation")->required();
    expand_cmd->add_option("--trunc", expand_trunc, "expand modulo t^N")->check(CLI::PositiveNumber);
    expand_cmd->add_flag("--json", json, "machine-readable output");

    VerifyOptions vopts;
    auto* verify = app.add_subcommand("verify", "seeded cross-check suite");
    verify->add_option("--v1-max", vopts.v1_max, "largest v1 sampled")->check(CLI::Range(3, 40));
    verify->add_option("--samples", vopts.samples, "coefficient vectors per family")->check(CLI::Range(1, 50));
    verify->add_option("--seed", vopts.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*classify) {
            std::vector<BranchInput> in = classify_in.collect();
            if (in.size() != 1) {
                std::cerr << "error: classify takes exactly one of --poly, --param or a positional input\n";
                return kBadInput;
            }
            ClassificationReport r = classify_input(in[0], trunc_flag(trunc));
            if (json) std::cout << to_json(r).dump(2) << "\n";
            else std::cout << render_text(r);
            return kOk;
        }
        if (*equiv) {
            std::vector<BranchInput> in = equiv_in.collect();
            if (in.size() != 2) {
                std::cerr << "error: equiv takes exactly two branches\n";
                return kBadInput;
            }
            EquivalenceReport r = compare_inputs(in[0], in[1], trunc_flag(trunc));
            if (json) std::cout << to_json(r).dump(2) << "\n";
            else std::cout << render_text(r);
            return r.result.equivalent ? kOk : kNegative;
        }
        if (*table) {
            ValueSemigroup s = make_semigroup(generators);
            if (json) std::cout << table_json(s).dump(2) << "\n";
            else std::cout << render_table_text(s);
            return kOk;
        }
        if (*expand_cmd) {
            PuiseuxParam phi = expand_polynomial(expand_poly, expand_trunc);
            if (json) {
                nlohmann::ordered_json j;
                j["schema_version"] = 1;
                j["input"] = expand_poly;
                j["x"] = series_json(phi.x);
                j["y"] = series_json(phi.y);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << phi.str() << "\n";
            }
            return kOk;
        }
        if (*verify) {
            std::vector<PropertyResult> results = run_verification(vopts);
            std::cout << render_verification(vopts, results);
            for (const auto& r : results)
                if (!r.passed) return kNegative;
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
