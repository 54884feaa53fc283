#include "branchform/verify.hpp"

#include <numeric>
#include <sstream>

#include "branchform/lambda_set.hpp"

namespace branchform {

namespace {

constexpr size_t kMaxReported = 5;

void fail(PropertyResult& r, const std::string& what) {
    r.passed = false;
    if (r.failures.size() < kMaxReported) r.failures.push_back(what);
}

/// Brute-force largest gap, 0 for the smooth semigroup.
int brute_force_frobenius(const std::vector<int>& gens) {
    int limit = 1;
    for (int g : gens) limit *= g;
    limit = limit * 2 + 8;
    std::vector<char> member(static_cast<size_t>(limit + 1), 0);
    member[0] = 1;
    for (int n = 1; n <= limit; ++n)
        for (int g : gens)
            if (n >= g && member[static_cast<size_t>(n - g)]) {
                member[static_cast<size_t>(n)] = 1;
                break;
            }
    int last = -1;
    for (int n = 0; n <= limit; ++n)
        if (!member[static_cast<size_t>(n)]) last = n;
    return last;
}

/// Family instances over every semigroup with v1 <= v1_max, `samples` coefficient vectors each.
/// Errors thrown by `fn` count as failures of `r`.
template <typename Fn>
void for_each_instance(PropertyResult& r, int v1_max, int samples, std::mt19937_64& rng, Fn&& fn) {
    for (const ValueSemigroup& s : semigroups_up_to(v1_max))
        for (const FamilyId& f : enumerate_families(s)) {
            FamilyTemplate t = family_template(f);
            int n = t.free_exponents.empty() ? 1 : samples;
            for (int i = 0; i < n; ++i) {
                PuiseuxParam phi = instantiate(f, sample_coefficients(t, rng));
                try {
                    fn(f, phi);
                } catch (const Error& e) {
                    fail(r, f.str() + ": " + phi.param_string() + ": " + e.what());
                }
            }
        }
}

}  // namespace

Rational sample_rational(std::mt19937_64& rng, bool nonzero) {
    for (;;) {
        long num = static_cast<long>(rng() % 19) - 9;
        long den = static_cast<long>(rng() % 9) + 1;
        if (num != 0 || !nonzero) return Rational(num, den);
    }
}

std::vector<Rational> sample_coefficients(const FamilyTemplate& t, std::mt19937_64& rng) {
    std::vector<Rational> out;
    for (int e : t.free_exponents) {
        Rational c = sample_rational(rng, t.nonzero_exponent == e);
        if (t.forbidden && t.forbidden->first == e && c == t.forbidden->second) c += 1;
        out.push_back(c);
    }
    return out;
}

PuiseuxParam sample_branch(std::mt19937_64& rng, int v1_max) {
    for (;;) {
        int v0 = 3 + static_cast<int>(rng() % 2);
        if (v1_max <= v0) continue;
        int v1 = v0 + 1 + static_cast<int>(rng() % static_cast<unsigned>(v1_max - v0));
        if (v1 % v0 == 0) continue;
        TruncatedSeries y = TruncatedSeries::monomial(1, v1);
        for (int e = v1 + 1; e < 3 * v1; ++e)
            if (rng() % 3 == 0) y.add_term(e, sample_rational(rng, true));
        PuiseuxParam phi{TruncatedSeries::monomial(1, v0), y};
        if (support_gcd(phi) == 1) return phi;
    }
}

PuiseuxParam sample_perturbation(const PuiseuxParam& phi, std::mt19937_64& rng, int trunc) {
    const BivariatePoly X = BivariatePoly::X(), Y = BivariatePoly::Y();
    auto r = [&] { return sample_rational(rng, true); };
    auto r0 = [&] { return sample_rational(rng, false); };
    Rational a = r(), b = r0(), c = r(), d = r0();
    if (a * c == b * d) b = 0;
    BivariatePoly p = a * X + b * Y + r0() * X.pow(2) + r0() * X * Y + r0() * Y.pow(2);
    BivariatePoly q = c * Y + d * X + r0() * X.pow(2) + r0() * X * Y + r0() * Y.pow(2) + r0() * X.pow(3);
    PuiseuxParam cut{phi.x.truncated(trunc), phi.y.truncated(trunc)};
    TruncatedSeries x = pullback(p, cut), y = pullback(q, cut);
    TruncatedSeries t = TruncatedSeries::monomial(r(), 1, trunc);
    t.add_term(2, r0());
    t.add_term(3, r0());
    return {compose(x, t, trunc), compose(y, t, trunc)};
}

std::vector<ValueSemigroup> semigroups_up_to(int v1_max) {
    std::vector<ValueSemigroup> out;
    for (int v0 = 2; v0 <= 4; ++v0)
        for (int v1 = v0 + 1; v1 <= v1_max; ++v1) {
            if (std::gcd(v0, v1) == 1) out.push_back(make_semigroup({v0, v1}));
            else if (v0 == 4 && v1 % 4 == 2)
                for (int v2 = 2 * v1 + 1; v2 <= 3 * v1; v2 += 2) out.push_back(make_semigroup({4, v1, v2}));
        }
    return out;
}

PropertyResult check_conductor_formula(int v1_max) {
    PropertyResult r{"conductor formula equals 1 + largest gap"};
    for (const ValueSemigroup& s : semigroups_up_to(v1_max)) {
        ++r.checks;
        int brute = 1 + brute_force_frobenius(s.generators());
        if (s.conductor() != brute)
            fail(r, s.str() + ": formula " + std::to_string(s.conductor()) + ", brute force " + std::to_string(brute));
    }
    return r;
}

PropertyResult check_lambda_closed_forms(int v1_max, int samples, std::mt19937_64& rng) {
    PropertyResult r{"echelon Lambda \\ Gamma equals the closed form"};
    for_each_instance(r, v1_max, samples, rng, [&](const FamilyId& f, const PuiseuxParam& phi) {
        ++r.checks;
        ValueSet lam = lambda_echelon(phi, f.semigroup);
        if (lam.minus_gamma() != closed_form_lambda_minus_gamma(f)) fail(r, f.str() + ": " + phi.param_string());
    });
    return r;
}

PropertyResult check_mned_values(int v1_max, int samples, std::mt19937_64& rng) {
    PropertyResult r{"differential witness values"};
    for_each_instance(r, v1_max, samples, rng, [&](const FamilyId& f, const PuiseuxParam& phi) {
        if (f.semigroup.multiplicity() != 4) return;
        for (const MnedWitness& w : mned_witnesses(phi)) {
            ++r.checks;
            int v = v_phi_differential(w.form, phi);
            if (v != w.value)
                fail(r, f.str() + " " + w.name + ": predicted " + std::to_string(w.value) + ", computed " +
                            std::to_string(v) + " on " + phi.param_string());
        }
    });
    return r;
}

PropertyResult check_tjurina(int v1_max, int samples, std::mt19937_64& rng) {
    PropertyResult r{"tau = c - |Lambda \\ Gamma|"};
    std::set<std::string> reported;
    for_each_instance(r, v1_max, samples, rng, [&](const FamilyId& f, const PuiseuxParam& phi) {
        ++r.checks;
        NormalForm nf = reduce(phi);
        int direct = f.semigroup.conductor() - static_cast<int>(lambda_echelon(phi, f.semigroup).minus_gamma().size());
        if (nf.tjurina != direct)
            fail(r, f.str() + ": reduce gives " + std::to_string(nf.tjurina) + ", echelon " + std::to_string(direct));
        int table = table_tjurina(f);
        if (table != direct && reported.insert(f.str()).second && r.info.size() < 2 * kMaxReported)
            r.info.push_back("table tau " + std::to_string(table) + " != " + std::to_string(direct) + " for " +
                             f.str());
    });
    if (!reported.empty())
        r.info.push_back(std::to_string(reported.size()) + " family instance(s) where the table tau formula differs");
    return r;
}

PropertyResult check_idempotence(int v1_max, std::mt19937_64& rng) {
    PropertyResult r{"reduce fixes normal forms and recovers the family"};
    for_each_instance(r, v1_max, 1, rng, [&](const FamilyId& f, const PuiseuxParam& phi) {
        ++r.checks;
        NormalForm nf = reduce(phi);
        if (!(nf.family == f) || !(nf.param() == phi))
            fail(r, f.str() + ": " + phi.param_string() + " -> " + nf.family.str() + ", " + nf.param().param_string());
        for (const auto& [e, c] : nf.coeffs)
            if (nf.lambda_set.contains(e + nf.v0())) fail(r, f.str() + ": kept removable exponent " + std::to_string(e));
    });
    return r;
}

PropertyResult check_invariance(int v1_max, int branches, std::mt19937_64& rng) {
    PropertyResult r{"normal form is invariant under random A-equivalence"};
    for (int i = 0; i < branches; ++i) {
        PuiseuxParam phi = sample_branch(rng, v1_max);
        ++r.checks;
        try {
            NormalForm base = reduce(phi);
            int trunc = 2 * (base.gamma.conductor() + 8);
            PuiseuxParam moved = sample_perturbation(phi, rng, trunc);
            NormalForm other = reduce(moved);
            EquivalenceResult eq = equivalent(base, other);
            if (!eq.equivalent)
                fail(r, phi.param_string() + ": " + base.param().param_string() + " vs " +
                            other.param().param_string() + " (" + eq.reason + ")");
        } catch (const Error& e) {
            fail(r, phi.param_string() + ": " + e.what());
        }
    }
    return r;
}

PropertyResult check_canonicalize(int v1_max, std::mt19937_64& rng) {
    PropertyResult r{"canonicalize is idempotent, orbit-constant and equivalent"};
    for_each_instance(r, v1_max, 1, rng, [&](const FamilyId& f, const PuiseuxParam& phi) {
        ++r.checks;
        NormalForm nf = reduce(phi);
        NormalForm canon = canonicalize(nf);
        if (!equivalent(nf, canon).equivalent) fail(r, f.str() + ": canonical form not equivalent");
        if (canonicalize(canon).coeffs != canon.coeffs) fail(r, f.str() + ": not idempotent");
        if (!nf.lambda) return;
        long n = std::labs(*nf.lambda - nf.v1());
        for (long u = 0; u < n; ++u) {
            NormalForm img;
            try {
                img = apply_homothety(nf, u);
            } catch (const Error&) {
                continue;
            }
            if (canonicalize(img).coeffs != canon.coeffs)
                fail(r, f.str() + ": orbit image u=" + std::to_string(u) + " canonicalizes differently");
        }
    });
    return r;
}

std::vector<PropertyResult> run_verification(const VerifyOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::vector<PropertyResult> out;
    out.push_back(check_conductor_formula(opts.v1_max));
    out.push_back(check_lambda_closed_forms(opts.v1_max, opts.samples, rng));
    out.push_back(check_mned_values(opts.v1_max, opts.samples, rng));
    out.push_back(check_tjurina(opts.v1_max, opts.samples, rng));
    out.push_back(check_idempotence(opts.v1_max, rng));
    out.push_back(check_invariance(std::min(opts.v1_max, 13), 10 * opts.samples, rng));
    out.push_back(check_canonicalize(opts.v1_max, rng));
    return out;
}

std::string render_verification(const VerifyOptions& opts, const std::vector<PropertyResult>& results) {
    std::ostringstream os;
    os << "verify v1_max=" << opts.v1_max << " samples=" << opts.samples << " seed=" << opts.seed << "\n";
    bool all = true;
    for (const PropertyResult& r : results) {
        all = all && r.passed;
        os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
        for (const std::string& f : r.failures) os << "  counterexample: " << f << "\n";
        for (const std::string& i : r.info) os << "  INFO " << i << "\n";
    }
    os << (all ? "ALL PASS" : "FAILURES") << "\n";
    return os.str();
}

}  // namespace branchform
