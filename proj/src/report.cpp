#include "branchform/report.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include "branchform/parse.hpp"

namespace branchform {

namespace {

bool retryable(const Error& e) {
    return e.kind() == ErrorKind::TruncationTooSmall || e.kind() == ErrorKind::AmbiguousOrder;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

std::string join(const std::set<int>& s) { return join(std::vector<int>(s.begin(), s.end())); }

nlohmann::ordered_json big_integer(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

nlohmann::ordered_json family_json(const FamilyId& f) {
    nlohmann::ordered_json j;
    j["name"] = f.row_str();
    j["row"] = std::string(to_string(f.row));
    if (f.has_j()) j["j"] = f.j;
    if (f.has_k()) j["k"] = f.k;
    j["semigroup"] = f.semigroup.generators();
    return j;
}

nlohmann::ordered_json stratum_json(const StratumDescription& d) {
    nlohmann::ordered_json j;
    j["dimension"] = d.dimension;
    j["group_order"] = d.group_order;
    j["exponents"] = d.exponents;
    j["weights"] = d.weights;
    return j;
}

std::string stratum_text(const StratumDescription& d) {
    std::ostringstream os;
    os << "dimension " << d.dimension << ", group of order " << d.group_order;
    if (!d.weights.empty()) os << ", weights [" << join(d.weights) << "] at exponents [" << join(d.exponents) << "]";
    return os.str();
}

std::string tjurina_text(const ClassificationReport& r) {
    std::ostringstream os;
    os << r.nf.tjurina << " (c - |Lambda \\ Gamma|); table formula " << r.table_tjurina;
    os << (r.tjurina_agrees() ? ", agree" : ", MISMATCH with the table formula");
    return os.str();
}

}  // namespace

BranchInput detect_input(const std::string& text) {
    return {text, looks_like_param(text) ? InputKind::Parametrization : InputKind::Polynomial};
}

PuiseuxParam expand_polynomial(const std::string& text, int trunc) {
    return expand(CurveEquation::prepare(parse_polynomial(text)), trunc);
}

ClassificationReport classify_input(const BranchInput& input, std::optional<int> trunc) {
    ClassificationReport r;
    r.input = input;
    if (input.kind == InputKind::Parametrization) {
        PuiseuxParam phi = parse_param(input.text);
        if (trunc) phi = {phi.x.truncated(*trunc), phi.y.truncated(*trunc)};
        r.nf = reduce(phi);
    } else {
        CurveEquation eq = CurveEquation::prepare(parse_polynomial(input.text));
        for (int t = trunc.value_or(kDefaultTrunc);; t *= 2) {
            try {
                PuiseuxParam phi = expand(eq, t);
                r.nf = reduce(phi);
                r.expansion = phi;
                break;
            } catch (const Error& e) {
                if (trunc || !retryable(e) || t >= kMaxAutoTrunc) throw;
            }
        }
    }
    r.table_tjurina = table_tjurina(r.nf.family);
    r.stratum = moduli_stratum(r.nf.family);
    return r;
}

nlohmann::ordered_json rational_json(const Rational& q) {
    return {{"num", big_integer(q.num())}, {"den", big_integer(q.den())}};
}

nlohmann::ordered_json series_json(const TruncatedSeries& s) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({{"exponent", e}, {"coeff", rational_json(c)}});
    nlohmann::ordered_json j;
    j["terms"] = terms;
    if (s.is_exact()) j["trunc"] = nullptr;
    else j["trunc"] = s.trunc();
    return j;
}

std::string render_text(const ClassificationReport& r) {
    const NormalForm& nf = r.nf;
    std::ostringstream os;
    auto line = [&](const char* key, const std::string& value) { os << std::left << std::setw(17) << key << value << "\n"; };
    line("input:", r.input.text + (r.input.kind == InputKind::Polynomial ? "  (polynomial)" : "  (parametrization)"));
    if (r.expansion) line("expansion:", r.expansion->str());
    line("semigroup:", nf.gamma.str() + ", conductor " + std::to_string(nf.gamma.conductor()) + ", gaps {" +
                           join(nf.gamma.gaps()) + "}");
    line("Lambda:", nf.lambda_set.str());
    line("Lambda \\ Gamma:", "{" + join(nf.lambda_set.minus_gamma()) + "}");
    line("lambda:", nf.lambda ? std::to_string(*nf.lambda) : "none");
    line("family:", nf.family.str());
    line("normal form:", nf.param().param_string());
    std::string moduli;
    for (const auto& [e, c] : nf.coeffs) moduli += (moduli.empty() ? "" : ", ") + ("a[" + std::to_string(e) + "] = " + c.str());
    if (nf.lambda && !nf.lambda_coeff.is_one())
        moduli += (moduli.empty() ? "" : ", ") + std::string("t^lambda coefficient ") + nf.lambda_coeff.str() +
                  " (no rational homothety makes it 1)";
    line("moduli:", moduli.empty() ? "none" : moduli);
    line("tau:", tjurina_text(r));
    line("stratum:", stratum_text(r.stratum));
    return os.str();
}

nlohmann::ordered_json to_json(const ClassificationReport& r) {
    const NormalForm& nf = r.nf;
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    nlohmann::ordered_json in;
    in["text"] = r.input.text;
    in["kind"] = r.input.kind == InputKind::Polynomial ? "polynomial" : "parametrization";
    if (r.expansion) {
        in["expansion"] = {{"x", series_json(r.expansion->x)}, {"y", series_json(r.expansion->y)}};
    }
    j["input"] = in;
    j["semigroup"] = {{"generators", nf.gamma.generators()},
                      {"conductor", nf.gamma.conductor()},
                      {"gaps", nf.gamma.gaps()}};
    std::set<int> extra = nf.lambda_set.minus_gamma();
    j["lambda_set"] = {{"below_conductor", std::vector<int>(nf.lambda_set.below_conductor.begin(),
                                                            nf.lambda_set.below_conductor.end())},
                       {"conductor", nf.lambda_set.conductor},
                       {"minus_gamma", std::vector<int>(extra.begin(), extra.end())}};
    if (nf.lambda) j["zariski_lambda"] = *nf.lambda;
    else j["zariski_lambda"] = nullptr;
    j["family"] = family_json(nf.family);
    nlohmann::ordered_json form;
    form["param"] = nf.param().param_string();
    form["x"] = series_json(nf.param().x);
    form["y"] = series_json(nf.param().y);
    form["lambda_coeff"] = rational_json(nf.lambda_coeff);
    nlohmann::ordered_json moduli = nlohmann::ordered_json::array();
    for (const auto& [e, c] : nf.coeffs) moduli.push_back({{"exponent", e}, {"coeff", rational_json(c)}});
    form["moduli"] = moduli;
    j["normal_form"] = form;
    j["tjurina"] = {{"value", nf.tjurina}, {"table", r.table_tjurina}, {"agrees", r.tjurina_agrees()}};
    j["stratum"] = stratum_json(r.stratum);
    return j;
}

EquivalenceReport compare_inputs(const BranchInput& a, const BranchInput& b, std::optional<int> trunc) {
    EquivalenceReport r;
    r.first = classify_input(a, trunc);
    r.second = classify_input(b, trunc);
    r.result = equivalent(r.first.nf, r.second.nf);
    return r;
}

std::string render_text(const EquivalenceReport& r) {
    std::ostringstream os;
    os << "first:  " << r.first.nf.family.str() << ", " << r.first.nf.param().param_string() << "\n";
    os << "second: " << r.second.nf.family.str() << ", " << r.second.nf.param().param_string() << "\n";
    if (r.result.equivalent) {
        os << "EQUIVALENT";
        if (r.result.witness) {
            const HomothetyWitness& w = *r.result.witness;
            if (w.root_of_unity)
                os << " witness (u, n) = (" << w.root_of_unity->first << ", " << w.root_of_unity->second << ")";
            else
                os << " witness " << w.str();
        }
        os << "\n";
    } else {
        os << "NOT_EQUIVALENT: " << r.result.reason << "\n";
    }
    return os.str();
}

nlohmann::ordered_json to_json(const EquivalenceReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["first"] = to_json(r.first);
    j["second"] = to_json(r.second);
    j["equivalent"] = r.result.equivalent;
    if (!r.result.equivalent) j["reason"] = r.result.reason;
    if (r.result.witness) {
        const HomothetyWitness& w = *r.result.witness;
        nlohmann::ordered_json wj;
        if (w.root_of_unity) {
            wj["u"] = w.root_of_unity->first;
            wj["n"] = w.root_of_unity->second;
        } else {
            wj["power"] = w.g;
            wj["value"] = rational_json(w.beta);
        }
        j["witness"] = wj;
    }
    return j;
}

std::string render_table_text(const ValueSemigroup& s) {
    std::ostringstream os;
    os << "semigroup " << s.str() << ", conductor " << s.conductor() << "\n";
    for (const FamilyId& f : enumerate_families(s)) {
        std::optional<int> lam = family_lambda(f);
        StratumDescription d = moduli_stratum(f);
        int tau = closed_form_tjurina(f);
        int table = table_tjurina(f);
        os << "\n" << f.row_str() << "\n";
        os << "  lambda          " << (lam ? std::to_string(*lam) : "none") << "\n";
        os << "  normal form     " << family_template(f).str() << "\n";
        os << "  Lambda \\ Gamma  {" << join(closed_form_lambda_minus_gamma(f)) << "}\n";
        os << "  tau             " << tau;
        if (table != tau) os << "  (table formula gives " << table << ")";
        os << "\n";
        os << "  stratum         " << stratum_text(d) << "\n";
    }
    return os.str();
}

nlohmann::ordered_json table_json(const ValueSemigroup& s) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["semigroup"] = {{"generators", s.generators()}, {"conductor", s.conductor()}, {"gaps", s.gaps()}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const FamilyId& f : enumerate_families(s)) {
        FamilyTemplate t = family_template(f);
        nlohmann::ordered_json row;
        row["family"] = family_json(f);
        std::optional<int> lam = family_lambda(f);
        if (lam) row["zariski_lambda"] = *lam;
        else row["zariski_lambda"] = nullptr;
        nlohmann::ordered_json fixed = nlohmann::ordered_json::array();
        for (const auto& [e, c] : t.fixed) fixed.push_back({{"exponent", e}, {"coeff", rational_json(c)}});
        row["template"] = {{"text", t.str()}, {"fixed", fixed}, {"free_exponents", t.free_exponents}};
        if (t.nonzero_exponent) row["template"]["nonzero_exponent"] = *t.nonzero_exponent;
        if (t.forbidden)
            row["template"]["forbidden"] = {{"exponent", t.forbidden->first},
                                            {"value", rational_json(t.forbidden->second)}};
        std::set<int> extra = closed_form_lambda_minus_gamma(f);
        row["lambda_minus_gamma"] = std::vector<int>(extra.begin(), extra.end());
        int tau = closed_form_tjurina(f);
        row["tjurina"] = {{"value", tau}, {"table", table_tjurina(f)}, {"agrees", tau == table_tjurina(f)}};
        row["stratum"] = stratum_json(moduli_stratum(f));
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

}  // namespace branchform
