#pragma once

#include "../core/matrix.hpp"
#include "../lie/standard.hpp"
#include "action.hpp"

namespace qpq {

// X_A = sum_i (A x)_i d/dx_i.
inline PolyVector linear_field(const Matrix& A, int order = default_hbar_order) {
    const int m = static_cast<int>(A.size());
    PolyVector v(m, order);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!is_zero(A[i][j])) {
                std::vector<int> e(m, 0);
                e[j] = 1;
                v.add(e, {i}, A[i][j]);
            }
    return v;
}

// L acting on its own underlying space R^dim by gamma(x) = -X_{ad x}.
inline ActionMap adjoint_action_model(const LieAlgebra& L) {
    const int n = L.dim();
    std::vector<PolyVector> fields;
    for (int x = 0; x < n; ++x) {
        Matrix A(n, std::vector<Rational>(n, Rational(0)));
        for (int j = 0; j < n; ++j)
            for (const auto& [i, c] : L.bracket(x, j)) A[i][j] = -c;
        fields.push_back(linear_field(A));
    }
    return ActionMap(L, std::move(fields));
}

// Abelian R^n acting on R^n by translations d/dx_i.
inline ActionMap translation_model(int n) {
    std::vector<PolyVector> fields;
    for (int i = 0; i < n; ++i) fields.push_back(PolyVector::partial(n, i));
    return ActionMap(abelian(n), std::move(fields));
}

inline ActionMap trivial_action(const LieAlgebra& L, int m) {
    return ActionMap(L, std::vector<PolyVector>(L.dim(), PolyVector(m)));
}

// sl2 acting on 2x2 matrices M = [[x1, x2], [x3, x4]] by right multiplication M -> M x.
// The underlying group action is free on invertible matrices.
inline ActionMap matrix_right_action_model() {
    const std::vector<Matrix> mats{{{0, 1}, {0, 0}}, {{0, 0}, {1, 0}}, {{1, 0}, {0, -1}}};
    std::vector<PolyVector> fields;
    for (const auto& X : mats) {
        // (M X)_{ab} = sum_c M_{ac} X_{cb}; coordinate index of M_{ab} is 2a + b
        Matrix A(4, std::vector<Rational>(4, Rational(0)));
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) A[2 * a + b][2 * a + c] += X[c][b];
        fields.push_back(linear_field(A));
    }
    return ActionMap(sl2(), std::move(fields));
}

} // namespace qpq
