#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "deltaspec/errors.hpp"
#include "deltaspec/field.hpp"

namespace deltaspec {

template <class F>
struct Matrix {
    using El = typename F::Element;

    std::size_t rows = 0, cols = 0;
    std::vector<El> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, El fill) : rows(r), cols(c), a(r * c, fill) {}

    El& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const El& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

template <class F>
struct LinearSolveResult {
    std::optional<std::vector<typename F::Element>> solution;
    std::size_t rank = 0;      // rank of M
    std::size_t rank_aug = 0;  // rank of [M | rhs]
    bool tolerance_warning = false;
};

// Solves M x = rhs, reporting rank(M) and rank([M|rhs]). A solution is
// returned iff the two ranks agree (free variables pinned to zero).
//
// Elimination strategy per backend:
//   PrimeField       plain Gaussian elimination with modular inverses
//   CyclotomicField  fraction-free Bareiss updates (divide by the previous
//                    pivot) to keep rational coefficient growth in check
//   ComplexField     scaled partial pivoting with the field tolerance;
//                    near-threshold rank decisions set tolerance_warning
template <class F>
LinearSolveResult<F> solve_linear(const F& field, const Matrix<F>& M,
                                  const std::vector<typename F::Element>& rhs) {
    using El = typename F::Element;
    if (rhs.size() != M.rows) throw PreconditionError("solve_linear: dimension mismatch");

    const std::size_t rows = M.rows, cols = M.cols;
    Matrix<F> w(rows, cols + 1, field.zero());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) w.at(i, j) = M.at(i, j);
        w.at(i, cols) = rhs[i];
    }

    LinearSolveResult<F> res;

    [[maybe_unused]] double scale = 1.0;
    if constexpr (!F::exact) {
        for (const El& v : w.a) scale = std::max(scale, std::abs(v));
    }
    auto is_pivot_zero = [&](const El& v) {
        if constexpr (F::exact) {
            return field.is_zero(v);
        } else {
            const double tau = field.tolerance() * scale;
            const double mag = std::abs(v);
            if (mag > tau / 8 && mag < tau * 8) res.tolerance_warning = true;
            return mag <= tau;
        }
    };

    std::vector<std::size_t> pivot_cols;
    El prev = field.one();  // Bareiss divisor
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pr = rows;
        if constexpr (F::exact) {
            for (std::size_t i = row; i < rows; ++i)
                if (!field.is_zero(w.at(i, col))) {
                    pr = i;
                    break;
                }
        } else {
            double best = -1.0;
            for (std::size_t i = row; i < rows; ++i) {
                double m = std::abs(w.at(i, col));
                if (m > best) {
                    best = m;
                    pr = i;
                }
            }
            if (pr < rows && is_pivot_zero(w.at(pr, col))) pr = rows;
        }
        if (pr == rows) continue;
        if (pr != row)
            for (std::size_t j = col; j <= cols; ++j) std::swap(w.at(row, j), w.at(pr, j));

        const El piv = w.at(row, col);
        for (std::size_t i = row + 1; i < rows; ++i) {
            if constexpr (std::is_same_v<F, CyclotomicField>) {
                const El inv_prev = field.inv(prev);
                for (std::size_t j = col + 1; j <= cols; ++j) {
                    El t = field.sub(field.mul(w.at(i, j), piv),
                                     field.mul(w.at(i, col), w.at(row, j)));
                    w.at(i, j) = field.mul(t, inv_prev);
                }
            } else {
                if (!field.is_zero(w.at(i, col))) {
                    const El factor = field.mul(w.at(i, col), field.inv(piv));
                    for (std::size_t j = col + 1; j <= cols; ++j)
                        w.at(i, j) = field.sub(w.at(i, j), field.mul(factor, w.at(row, j)));
                }
            }
            w.at(i, col) = field.zero();
        }
        prev = piv;
        pivot_cols.push_back(col);
        ++row;
    }

    res.rank = pivot_cols.size();
    bool consistent = true;
    for (std::size_t i = res.rank; i < rows; ++i)
        if (!is_pivot_zero(w.at(i, cols))) {
            consistent = false;
            break;
        }
    res.rank_aug = res.rank + (consistent ? 0 : 1);
    if (!consistent) return res;

    std::vector<El> x(cols, field.zero());
    for (std::size_t k = res.rank; k-- > 0;) {
        const std::size_t pc = pivot_cols[k];
        El acc = w.at(k, cols);
        for (std::size_t j = pc + 1; j < cols; ++j)
            if (!field.is_zero(x[j])) acc = field.sub(acc, field.mul(w.at(k, j), x[j]));
        x[pc] = field.mul(acc, field.inv(w.at(k, pc)));
    }
    res.solution = std::move(x);
    return res;
}

}  // namespace deltaspec
