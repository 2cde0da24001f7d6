#pragma once

#include "../core/matrix.hpp"
#include "lie_algebra.hpp"

#include <string>

namespace qpq {

// sl2 in the ordered basis e < f < h.
inline LieAlgebra sl2() {
    LieAlgebra L({{"e", 0}, {"f", 0}, {"h", 0}});
    L.set_bracket(0, 1, {{2, Rational(1)}});
    L.set_bracket(0, 2, {{0, Rational(-2)}});
    L.set_bracket(1, 2, {{1, Rational(2)}});
    return L;
}

inline LieAlgebra abelian(int n, const std::string& prefix = "x") {
    std::vector<Generator> g;
    for (int i = 1; i <= n; ++i) g.push_back({prefix + std::to_string(i), 0});
    return LieAlgebra(std::move(g));
}

// R t acting on R^k by the matrix A: [t, y_i] = sum_j A[j][i] y_j.
inline LieAlgebra semidirect(const Matrix& A) {
    const int k = static_cast<int>(A.size());
    std::vector<Generator> g{{"t", 0}};
    for (int i = 1; i <= k; ++i) g.push_back({"y" + std::to_string(i), 0});
    LieAlgebra L(std::move(g));
    for (int i = 0; i < k; ++i) {
        LieVector v;
        for (int j = 0; j < k; ++j)
            if (!is_zero(A[j][i])) v[j + 1] = A[j][i];
        L.set_bracket(0, i + 1, v);
    }
    return L;
}

inline LieAlgebra direct_sum(const LieAlgebra& A, const LieAlgebra& B) {
    std::vector<Generator> g = A.generators();
    for (const auto& x : B.generators()) g.push_back(x);
    LieAlgebra L(std::move(g));
    for (const auto& [ij, v] : A.stored_brackets()) L.set_bracket(ij.first, ij.second, v);
    const int off = A.dim();
    for (const auto& [ij, v] : B.stored_brackets()) {
        LieVector s;
        for (const auto& [k, c] : v) s[k + off] = c;
        L.set_bracket(ij.first + off, ij.second + off, s);
    }
    return L;
}

// Same algebra in the basis x'_i = sum_j P[i][j] x_j; P must preserve degrees.
inline LieAlgebra change_basis(const LieAlgebra& L, const Matrix& P) {
    const int n = L.dim();
    auto Pinv = inverse(P);
    if (!Pinv) throw invalid_input("change of basis is singular");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!is_zero(P[i][j]) && L.degree(i) != L.degree(j))
                throw invalid_input("change of basis mixes degrees");
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i) gens.push_back({L.name(i) + "'", L.degree(i)});
    LieAlgebra out(gens);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i == j && (L.degree(i) & 1) == 0) continue;
            LieVector a, b;
            for (int k = 0; k < n; ++k) {
                if (!is_zero(P[i][k])) a[k] = P[i][k];
                if (!is_zero(P[j][k])) b[k] = P[j][k];
            }
            LieVector old = L.bracket(a, b), nv;
            for (const auto& [k, c] : old)
                for (int m = 0; m < n; ++m)
                    if (!is_zero((*Pinv)[k][m])) add_into(nv, c * (*Pinv)[k][m], {{m, Rational(1)}});
            out.set_bracket(i, j, nv);
        }
    return out;
}

} // namespace qpq
