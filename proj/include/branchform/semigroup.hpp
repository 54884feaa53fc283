#pragma once

/**
 * @file semigroup.hpp
 * @brief Value semigroups of plane branches.
 *
 * A semigroup <v0, ..., vg> of a plane branch has strictly decreasing
 * gcds e_i = gcd(v0..vi), n_i = e_{i-1}/e_i, and n_i v_i < v_{i+1}.
 * Its conductor is c = sum_{i>=1} (n_i - 1) v_i - v0 + 1.
 */

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace branchform {

class ValueSemigroup {
public:
    ValueSemigroup() : ValueSemigroup(std::vector<int>{1}) {}

    explicit ValueSemigroup(std::vector<int> generators) : gens_(std::move(generators)) {
        validate_and_derive();
    }

    const std::vector<int>& generators() const { return gens_; }
    int multiplicity() const { return gens_.front(); }
    int genus() const { return static_cast<int>(gens_.size()) - 1; }
    int conductor() const { return conductor_; }

    /// v_i, 0 <= i <= g.
    int v(int i) const { return gens_.at(static_cast<size_t>(i)); }
    /// e_i = gcd(v_0..v_i).
    int e(int i) const { return e_.at(static_cast<size_t>(i)); }
    /// n_i = e_{i-1}/e_i for i >= 1.
    int n(int i) const { return e(i - 1) / e(i); }

    bool is_member(int value) const {
        if (value < 0) return false;
        if (value >= conductor_) return true;
        return member_[static_cast<size_t>(value)];
    }

    /// All gaps, sorted.
    std::vector<int> gaps() const {
        std::vector<int> out;
        for (int k = 0; k < conductor_; ++k)
            if (!member_[static_cast<size_t>(k)]) out.push_back(k);
        return out;
    }

    std::vector<int> gaps_above(int bound) const {
        std::vector<int> out;
        for (int g : gaps())
            if (g > bound) out.push_back(g);
        return out;
    }

    /// Members in [0, bound].
    std::vector<int> members_up_to(int bound) const {
        std::vector<int> out;
        for (int k = 0; k <= bound; ++k)
            if (is_member(k)) out.push_back(k);
        return out;
    }

    /**
     * Possible Zariski invariants for branches with this semigroup
     * (multiplicity 2, 3 or 4 only).
     */
    std::vector<int> admissible_lambdas() const {
        int v0 = multiplicity();
        if (v0 > 4) throw Error(ErrorKind::UnsupportedMultiplicity, "admissible lambdas need multiplicity <= 4");
        std::vector<int> out;
        if (v0 <= 2) return out;
        int v1 = v(1);
        if (v0 == 3) {
            for (int j = 2; j <= v1 / 3; ++j) out.push_back(2 * v1 - 3 * j);
        } else if (genus() == 1) {
            for (int j = 2; j <= v1 / 4; ++j) out.push_back(2 * v1 - 4 * j);
            for (int j = 2; j <= v1 / 2; ++j) out.push_back(3 * v1 - 4 * j);
        } else {
            out.push_back(v(2) - v(1));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        os << "<";
        for (size_t i = 0; i < gens_.size(); ++i) os << (i ? "," : "") << gens_[i];
        os << ">";
        return os.str();
    }

    friend bool operator==(const ValueSemigroup& a, const ValueSemigroup& b) { return a.gens_ == b.gens_; }

private:
    void validate_and_derive() {
        if (gens_.empty()) throw Error(ErrorKind::NotMinimalGenerators, "empty generator list");
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i] <= 0) throw Error(ErrorKind::NotMinimalGenerators, "generators must be positive");
            if (i > 0 && gens_[i] <= gens_[i - 1])
                throw Error(ErrorKind::NotMinimalGenerators, "generators must be strictly increasing");
        }
        e_.clear();
        int g = 0;
        for (int v : gens_) {
            g = std::gcd(g, v);
            e_.push_back(g);
        }
        if (e_.back() != 1) throw Error(ErrorKind::NotCoprime, str() + " has gcd " + std::to_string(e_.back()));
        for (size_t i = 1; i < gens_.size(); ++i) {
            if (e_[i] == e_[i - 1])
                throw Error(ErrorKind::NotMinimalGenerators,
                            std::to_string(gens_[i]) + " is generated by the smaller generators of " + str());
        }
        for (size_t i = 1; i + 1 < gens_.size(); ++i) {
            long ni = e_[i - 1] / e_[i];
            if (ni * gens_[i] >= gens_[i + 1])
                throw Error(ErrorKind::InadmissiblePlaneBranchSemigroup,
                            str() + " violates n_i v_i < v_{i+1} at i = " + std::to_string(i));
        }
        long c = 1 - gens_[0];
        for (size_t i = 1; i < gens_.size(); ++i) c += static_cast<long>(e_[i - 1] / e_[i] - 1) * gens_[i];
        conductor_ = static_cast<int>(c);

        member_.assign(static_cast<size_t>(conductor_ + 1), false);
        member_[0] = true;
        for (int k = 1; k <= conductor_; ++k)
            for (int v : gens_)
                if (v <= k && member_[static_cast<size_t>(k - v)]) {
                    member_[static_cast<size_t>(k)] = true;
                    break;
                }
    }

    std::vector<int> gens_;
    std::vector<int> e_;
    int conductor_ = 0;
    std::vector<bool> member_;
};

inline ValueSemigroup make_semigroup(std::vector<int> generators) { return ValueSemigroup(std::move(generators)); }

}  // namespace branchform
