#pragma once

/**
 * @file family.hpp
 * @brief The families of normal forms for branches of multiplicity <= 4:
 * index ranges, templates, closed-form Lambda \ Gamma, tabulated Tjurina
 * numbers and the moduli stratum of each family.
 *
 * Throughout, q = [v1/4]. Case-b coefficients a_i sit at exponent
 * 3 v1 - 4 (q + j + 1 - i); case-a coefficients at 2 v1 - 4 (j - q - i);
 * three-generator coefficients at v2 - 4 (q + 1 - i).
 */

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"
#include "semigroup.hpp"
#include "valuation.hpp"

namespace branchform {

enum class Row {
    Smooth,
    Mult2,
    Mult3Monomial,
    Mult3Lambda,
    Mult4Monomial,
    Mult4CaseA,
    Mult4CaseB1,
    Mult4CaseB2,
    Mult4CaseB3,
    Mult4ThreeGen,
};

constexpr std::string_view to_string(Row r) {
    switch (r) {
        case Row::Smooth: return "SMOOTH";
        case Row::Mult2: return "MULT2";
        case Row::Mult3Monomial: return "MULT3_MONOMIAL";
        case Row::Mult3Lambda: return "MULT3_LAMBDA";
        case Row::Mult4Monomial: return "MULT4_MONOMIAL";
        case Row::Mult4CaseA: return "MULT4_CASE_A";
        case Row::Mult4CaseB1: return "MULT4_CASE_B1";
        case Row::Mult4CaseB2: return "MULT4_CASE_B2";
        case Row::Mult4CaseB3: return "MULT4_CASE_B3";
        case Row::Mult4ThreeGen: return "MULT4_THREE_GEN";
    }
    return "UNKNOWN";
}

struct FamilyId {
    ValueSemigroup semigroup;
    Row row = Row::Smooth;
    int j = 0;
    int k = 0;

    bool has_j() const {
        return row == Row::Mult3Lambda || row == Row::Mult4CaseA || row == Row::Mult4CaseB1 ||
               row == Row::Mult4CaseB2 || row == Row::Mult4CaseB3;
    }
    bool has_k() const { return row == Row::Mult4CaseB1; }

    /// e.g. "MULT4_CASE_B1(j=2, k=1)".
    std::string row_str() const {
        std::string s(to_string(row));
        if (has_k()) return s + "(j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")";
        if (has_j()) return s + "(j=" + std::to_string(j) + ")";
        return s;
    }

    std::string str() const { return row_str() + " over " + semigroup.str(); }

    friend bool operator==(const FamilyId& a, const FamilyId& b) {
        return a.semigroup == b.semigroup && a.row == b.row && a.j == b.j && a.k == b.k;
    }
};

/// (3 v1 - 4j) / (2 v1): the exceptional coefficient separating B2 from B3.
inline Rational case_b_critical_value(int v1, int j) { return Rational(3 * v1 - 4 * j, 2 * v1); }

namespace detail {

inline Error bad_family(const FamilyId& f, const std::string& why) {
    return Error(ErrorKind::InvalidFamilyParameters, f.str() + ": " + why);
}

inline void require_range(const FamilyId& f, const char* name, int value, int lo, int hi) {
    if (value < lo || value > hi)
        throw bad_family(f, std::string(name) + " = " + std::to_string(value) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
}

}  // namespace detail

/// Throws InvalidFamilyParameters unless the row fits the semigroup and j, k are in range.
inline void validate_family(const FamilyId& f) {
    const ValueSemigroup& s = f.semigroup;
    int v0 = s.multiplicity();
    int g = s.genus();
    auto expect_shape = [&](int mult, int genus) {
        if (v0 != mult || g != genus) throw detail::bad_family(f, "row does not match the semigroup");
    };
    switch (f.row) {
        case Row::Smooth: expect_shape(1, 0); break;
        case Row::Mult2: expect_shape(2, 1); break;
        case Row::Mult3Monomial: expect_shape(3, 1); break;
        case Row::Mult3Lambda:
            expect_shape(3, 1);
            detail::require_range(f, "j", f.j, 2, s.v(1) / 3);
            break;
        case Row::Mult4Monomial: expect_shape(4, 1); break;
        case Row::Mult4CaseA:
            expect_shape(4, 1);
            detail::require_range(f, "j", f.j, 2, s.v(1) / 2);
            break;
        case Row::Mult4CaseB1:
            expect_shape(4, 1);
            detail::require_range(f, "j", f.j, 2, s.v(1) / 4);
            detail::require_range(f, "k", f.k, 1, s.v(1) / 4 - f.j);
            break;
        case Row::Mult4CaseB2:
        case Row::Mult4CaseB3:
            expect_shape(4, 1);
            detail::require_range(f, "j", f.j, 2, s.v(1) / 4);
            break;
        case Row::Mult4ThreeGen: expect_shape(4, 2); break;
    }
    if (!f.has_j() && f.j != 0) throw detail::bad_family(f, "row takes no j");
    if (!f.has_k() && f.k != 0) throw detail::bad_family(f, "row takes no k");
}

/// Zariski invariant of the family, nullopt for rows with Lambda \ Gamma empty.
inline std::optional<int> family_lambda(const FamilyId& f) {
    validate_family(f);
    const ValueSemigroup& s = f.semigroup;
    switch (f.row) {
        case Row::Mult3Lambda: return 2 * s.v(1) - 3 * f.j;
        case Row::Mult4CaseA: return 3 * s.v(1) - 4 * f.j;
        case Row::Mult4CaseB1:
        case Row::Mult4CaseB2:
        case Row::Mult4CaseB3: return 2 * s.v(1) - 4 * f.j;
        case Row::Mult4ThreeGen: return s.v(2) - s.v(1);
        default: return std::nullopt;
    }
}

/// Every family over a semigroup of multiplicity <= 4, in table order.
inline std::vector<FamilyId> enumerate_families(const ValueSemigroup& s) {
    int v0 = s.multiplicity();
    if (v0 > 4) throw Error(ErrorKind::UnsupportedMultiplicity, "no families for multiplicity > 4");
    std::vector<FamilyId> out;
    if (v0 == 1) return {{s, Row::Smooth}};
    if (v0 == 2) return {{s, Row::Mult2}};
    int v1 = s.v(1);
    if (v0 == 3) {
        out.push_back({s, Row::Mult3Monomial});
        for (int j = 2; j <= v1 / 3; ++j) out.push_back({s, Row::Mult3Lambda, j});
        return out;
    }
    if (s.genus() == 2) return {{s, Row::Mult4ThreeGen}};
    int q = v1 / 4;
    out.push_back({s, Row::Mult4Monomial});
    for (int j = 2; j <= v1 / 2; ++j) out.push_back({s, Row::Mult4CaseA, j});
    for (int j = 2; j <= q; ++j)
        for (int k = 1; k <= q - j; ++k) out.push_back({s, Row::Mult4CaseB1, j, k});
    for (int j = 2; j <= q; ++j) out.push_back({s, Row::Mult4CaseB2, j});
    for (int j = 2; j <= q; ++j) out.push_back({s, Row::Mult4CaseB3, j});
    return out;
}

/// The Lambda \ Gamma column of the table.
inline std::set<int> closed_form_lambda_minus_gamma(const FamilyId& f) {
    validate_family(f);
    const ValueSemigroup& s = f.semigroup;
    std::set<int> out;
    if (s.multiplicity() < 3) return out;
    int v1 = s.v(1);
    int q = v1 / 4;
    switch (f.row) {
        case Row::Mult3Lambda:
            for (int t = 1; t <= f.j - 1; ++t) out.insert(2 * v1 - 3 * t);
            break;
        case Row::Mult4CaseA:
            for (int t = 1; t <= f.j - 1; ++t) out.insert(3 * v1 - 4 * t);
            break;
        case Row::Mult4CaseB1:
            for (int t = 1; t <= f.j - 1; ++t) out.insert(2 * v1 - 4 * t);
            for (int t = 1; t <= q + 1 - f.k; ++t) out.insert(3 * v1 - 4 * t);
            break;
        case Row::Mult4CaseB2:
            for (int t = 1; t <= f.j - 1; ++t) out.insert(2 * v1 - 4 * t);
            for (int t = 1; t <= f.j; ++t) out.insert(3 * v1 - 4 * t);
            break;
        case Row::Mult4CaseB3:
            for (int t = 1; t <= f.j - 1; ++t) {
                out.insert(2 * v1 - 4 * t);
                out.insert(3 * v1 - 4 * t);
            }
            break;
        case Row::Mult4ThreeGen:
            for (int t = 1; t <= v1 / 2 - 1; ++t) out.insert(s.v(2) + v1 - 4 * t);
            break;
        default: break;
    }
    return out;
}

/// The tau column of the table, transcribed as printed.
inline int table_tjurina(const FamilyId& f) {
    validate_family(f);
    const ValueSemigroup& s = f.semigroup;
    if (f.row == Row::Smooth) return 0;
    int v1 = s.v(1);
    int q = v1 / 4;
    switch (f.row) {
        case Row::Mult2: return v1 - 1;
        case Row::Mult3Monomial: return 2 * (v1 - 1);
        case Row::Mult3Lambda: return 2 * v1 - f.j - 1;
        case Row::Mult4Monomial: return 3 * (v1 - 1);
        case Row::Mult4CaseA: return 3 * v1 - f.j - 2;
        case Row::Mult4CaseB1: return 3 * (v1 - 1) + f.k - q;
        case Row::Mult4CaseB2: return 3 * v1 - 2 * (f.j + 1);
        case Row::Mult4CaseB3: return 3 * (v1 - 1) - 2 * (f.j - 1);
        case Row::Mult4ThreeGen: return s.v(2) + v1 / 2 - 2;
        default: return 0;
    }
}

/// c - |Lambda \ Gamma| evaluated on the closed-form column.
inline int closed_form_tjurina(const FamilyId& f) {
    return f.semigroup.conductor() - static_cast<int>(closed_form_lambda_minus_gamma(f).size());
}

/**
 * Shape of the normal forms of one family: x = t^v0 and
 * y = sum of the fixed terms + sum_i a_i t^(free exponent i).
 */
struct FamilyTemplate {
    int v0 = 1;
    std::map<int, Rational> fixed;
    std::vector<int> free_exponents;
    std::vector<int> free_indices;
    /// Exponent whose coefficient must be nonzero (a_k in B1).
    std::optional<int> nonzero_exponent;
    /// Exponent and the value its coefficient must avoid (B2).
    std::optional<std::pair<int, Rational>> forbidden;

    std::string str() const {
        std::ostringstream os;
        os << "x=t^" << v0 << "; y=";
        bool first = true;
        for (const auto& [e, c] : fixed) {
            if (!first) os << (c.sign() < 0 ? " - " : " + ");
            Rational mag = first ? c : (c.sign() < 0 ? -c : c);
            if (!mag.is_one()) os << mag.str() << "*";
            os << "t^" << e;
            first = false;
        }
        for (size_t n = 0; n < free_exponents.size(); ++n)
            os << " + a" << free_indices[n] << "*t^" << free_exponents[n];
        return os.str();
    }
};

inline FamilyTemplate family_template(const FamilyId& f) {
    validate_family(f);
    const ValueSemigroup& s = f.semigroup;
    FamilyTemplate t;
    t.v0 = s.multiplicity();
    if (f.row == Row::Smooth) {
        t.fixed[1] = 1;
        return t;
    }
    int v1 = s.v(1);
    int q = v1 / 4;
    t.fixed[v1] = 1;
    if (auto lam = family_lambda(f)) t.fixed[*lam] = 1;
    auto add_free = [&](int index, int exponent) {
        t.free_indices.push_back(index);
        t.free_exponents.push_back(exponent);
    };
    auto case_b_exponent = [&](int i) { return 3 * v1 - 4 * (q + f.j + 1 - i); };
    switch (f.row) {
        case Row::Mult4CaseA:
            for (int i = 1; i <= f.j - q - 2; ++i) add_free(i, 2 * v1 - 4 * (f.j - q - i));
            break;
        case Row::Mult4CaseB1:
            for (int i = f.k; i <= f.j - 2 + f.k; ++i) add_free(i, case_b_exponent(i));
            t.nonzero_exponent = case_b_exponent(f.k);
            break;
        case Row::Mult4CaseB2:
            for (int i = q - f.j + 1; i <= q - 1; ++i) add_free(i, case_b_exponent(i));
            t.forbidden = std::make_pair(case_b_exponent(q - f.j + 1), case_b_critical_value(v1, f.j));
            break;
        case Row::Mult4CaseB3:
            t.fixed[case_b_exponent(q - f.j + 1)] = case_b_critical_value(v1, f.j);
            for (int i = q - f.j + 2; i <= q; ++i) add_free(i, case_b_exponent(i));
            break;
        case Row::Mult4ThreeGen:
            for (int i = 1; i <= q - 1; ++i) add_free(i, s.v(2) - 4 * (q + 1 - i));
            break;
        default: break;
    }
    return t;
}

/// The normal form of family `f` with the given free coefficients (in template order).
inline PuiseuxParam instantiate(const FamilyId& f, const std::vector<Rational>& coeffs) {
    FamilyTemplate t = family_template(f);
    if (coeffs.size() != t.free_exponents.size())
        throw detail::bad_family(f, "expected " + std::to_string(t.free_exponents.size()) + " coefficients, got " +
                                        std::to_string(coeffs.size()));
    TruncatedSeries y;
    for (const auto& [e, c] : t.fixed) y.add_term(e, c);
    for (size_t n = 0; n < coeffs.size(); ++n) {
        int e = t.free_exponents[n];
        if (t.nonzero_exponent == e && coeffs[n].is_zero())
            throw detail::bad_family(f, "coefficient at t^" + std::to_string(e) + " must be nonzero");
        if (t.forbidden && t.forbidden->first == e && coeffs[n] == t.forbidden->second)
            throw detail::bad_family(f, "coefficient at t^" + std::to_string(e) + " must differ from " +
                                            t.forbidden->second.str());
        y.add_term(e, coeffs[n]);
    }
    return {TruncatedSeries::monomial(1, t.v0), y};
}

struct StratumDescription {
    int dimension = 0;
    /// Order of the cyclic group acting; 1 for the trivial group.
    int group_order = 1;
    std::vector<int> exponents;
    /// r acts on the coefficient at exponent e by r^(e - v1).
    std::vector<int> weights;
};

inline StratumDescription moduli_stratum(const FamilyId& f) {
    FamilyTemplate t = family_template(f);
    StratumDescription d;
    d.dimension = static_cast<int>(t.free_exponents.size());
    auto lam = family_lambda(f);
    if (lam) d.group_order = std::max(1, std::abs(*lam - f.semigroup.v(1)));
    d.exponents = t.free_exponents;
    for (int e : t.free_exponents) d.weights.push_back(e - f.semigroup.v(1));
    return d;
}

}  // namespace branchform
