#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over Q: order-pivoted echelon bases of spaces
 * of truncated series, and a dense solver.
 */

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "series.hpp"

namespace branchform {

/**
 * Row echelon basis of a Q-vector space of power series, pivoted on the
 * order (least exponent). Pivot orders are exactly the orders attained by
 * nonzero elements of the span, as long as every row is known beyond the
 * orders of interest.
 */
class OrderEchelon {
public:
    /// Reduces `row` against the basis; a nonzero remainder becomes a new pivot.
    /// Returns the new pivot order, or nullopt when the row reduced to O(t^trunc).
    std::optional<int> insert(TruncatedSeries row) {
        while (auto o = row.order()) {
            auto it = pivots_.find(*o);
            if (it == pivots_.end()) {
                min_trunc_ = std::min(min_trunc_, row.trunc());
                pivots_.emplace(*o, std::move(row));
                return o;
            }
            Rational factor = row.leading_coeff() / it->second.leading_coeff();
            row = row - factor * it->second;
        }
        min_trunc_ = std::min(min_trunc_, row.trunc());
        return std::nullopt;
    }

    std::set<int> orders() const {
        std::set<int> out;
        for (const auto& [o, r] : pivots_) out.insert(o);
        return out;
    }

    bool has_order(int o) const { return pivots_.count(o) != 0; }
    const std::map<int, TruncatedSeries>& pivots() const { return pivots_; }

    /// Smallest truncation seen among pivots and discarded rows: orders below it are certified.
    int certified_below() const { return min_trunc_; }

private:
    std::map<int, TruncatedSeries> pivots_;
    int min_trunc_ = kExactTrunc;
};

using DenseMatrix = std::vector<std::vector<Rational>>;

/**
 * Solves A c = b exactly (A is rows x cols). Returns one solution with free
 * variables set to zero, or nullopt when the system is inconsistent.
 */
inline std::optional<std::vector<Rational>> solve_linear(DenseMatrix a, std::vector<Rational> b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational inv = a[r][c].inverse();
        for (size_t k = c; k < cols; ++k) a[r][k] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c];
            for (size_t k = c; k < cols; ++k)
                if (!a[r][k].is_zero()) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<Rational> x(cols);
    for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

}  // namespace branchform
