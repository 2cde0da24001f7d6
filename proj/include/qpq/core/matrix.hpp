#pragma once

#include "error.hpp"
#include "rational.hpp"

#include <optional>
#include <vector>

namespace qpq {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix identity_matrix(int n) {
    Matrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Matrix c(n, std::vector<Rational>(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (!is_zero(a[i][l]))
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline std::optional<Matrix> inverse(Matrix a) {
    const int n = static_cast<int>(a.size());
    Matrix inv = identity_matrix(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!is_zero(a[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational s = 1 / a[col][col];
        for (int j = 0; j < n; ++j) a[col][j] *= s, inv[col][j] *= s;
        for (int r = 0; r < n; ++r) {
            if (r == col || is_zero(a[r][col])) continue;
            Rational f = a[r][col];
            for (int j = 0; j < n; ++j) a[r][j] -= f * a[col][j], inv[r][j] -= f * inv[col][j];
        }
    }
    return inv;
}

} // namespace qpq
