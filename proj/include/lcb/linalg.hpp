#pragma once

// Small dense linear algebra over an arbitrary field type. Used with exact
// rationals (rank tests, normal equations) and with doubles where the
// matrices are tiny.

#include <cstddef>
#include <optional>
#include <vector>

#include "lcb/numbers.hpp"

namespace lcb {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> zeros(std::size_t rows, std::size_t cols) {
    return Matrix<T>(rows, std::vector<T>(cols, T(0)));
}

template <class T>
Matrix<T> identity(std::size_t n) {
    auto m = zeros<T>(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
    if (a.empty()) return {};
    auto t = zeros<T>(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    auto c = zeros<T>(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (is_zero(a[i][l])) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

// Row echelon form in place. Columns are eliminated in the given order;
// returns pivot columns in the order found. Rows beyond the rank end up zero.
// `tol` only matters for floating types.
template <class T>
std::vector<std::size_t> row_echelon(Matrix<T>& a, const std::vector<std::size_t>& col_order,
                                     double tol = 0.0) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c : col_order) {
        if (r >= a.size()) break;
        std::size_t best = a.size();
        double best_size = tol;
        for (std::size_t i = r; i < a.size(); ++i) {
            double s = pivot_size(a[i][c]);
            if (s > best_size) {
                best_size = s;
                best = i;
                if constexpr (!std::is_floating_point_v<T>) break;
            }
        }
        if (best == a.size()) continue;
        std::swap(a[r], a[best]);
        T inv = T(1) / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || is_zero(a[i][c])) continue;
            T f = a[i][c];
            for (std::size_t j = 0; j < a[i].size(); ++j)
                if (!is_zero(a[r][j])) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> a, double tol = 0.0) {
    if (a.empty()) return 0;
    std::vector<std::size_t> cols(a[0].size());
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    return row_echelon(a, cols, tol).size();
}

// Inverse of a square matrix, or nullopt if singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, double tol = 0.0) {
    std::size_t n = a.size();
    Matrix<T> aug = zeros<T>(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = T(1);
    }
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    if (row_echelon(aug, cols, tol).size() < n) return std::nullopt;
    Matrix<T> inv = zeros<T>(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b, double tol = 0.0) {
    auto inv = inverse(a, tol);
    if (!inv) return std::nullopt;
    std::vector<T> x(a.size(), T(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) x[i] += (*inv)[i][j] * b[j];
    return x;
}

}  // namespace lcb
