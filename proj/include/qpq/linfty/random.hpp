#pragma once

#include "../core/matrix.hpp"
#include "../lie/lie_algebra.hpp"
#include "../lie/standard.hpp"
#include "deform.hpp"

#include <random>

namespace qpq {

// g (x) Lambda(xi_1, xi_2) with |xi_i| = 1 and d = ad of u (x) xi_1.
// Generators are a (x) 1, a (x) xi_1, a (x) xi_2, a (x) xi_1 xi_2 for each basis vector a, in that block order.
inline Dgla current_dgla(const LieAlgebra& g, const LieVector& u) {
    const int n = g.dim();
    const int deg[4] = {0, 1, 1, 2};
    const char* tag[4] = {"", "x1", "x2", "x12"};
    std::vector<Generator> gens;
    for (int b = 0; b < 4; ++b)
        for (int a = 0; a < n; ++a) {
            if (g.degree(a) != 0) throw unsupported("current DGLA expects an ungraded Lie algebra");
            gens.push_back({g.name(a) + tag[b], deg[b]});
        }
    // xi-monomials as bit masks 0, 1, 2, 3; product with sign or -1 for zero.
    auto mul = [](int p, int q, int& sign) {
        if (p & q) return -1;
        sign = (p == 2 && q == 1) ? -1 : 1;
        return p | q;
    };
    LieAlgebra L(std::move(gens));
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const int i = p * n + a, j = q * n + b;
                    if (i > j || (i == j && (deg[p] & 1) == 0)) continue;
                    int sign = 1;
                    const int r = mul(p, q, sign);
                    LieVector v;
                    if (r >= 0)
                        for (const auto& [k, c] : g.bracket(a, b)) v[r * n + k] = c * sign;
                    L.set_bracket(i, j, v);
                }
    LieVector x;
    for (const auto& [a, c] : u) x[n + a] = c;
    std::vector<LieVector> d(L.dim());
    for (int i = 0; i < L.dim(); ++i) d[i] = L.bracket(x, LieVector{{i, Rational(1)}});
    return {std::move(L), std::move(d)};
}

// New generator i = sum_k P[i][k] old_k; P must preserve degrees.
inline Dgla change_basis(const Dgla& g, const Matrix& P) {
    const int n = g.L.dim();
    auto Pinv = inverse(P);
    if (!Pinv) throw invalid_input("change of basis is singular");
    Dgla out{change_basis(g.L, P), {}};
    if (g.d.empty()) return out;
    out.d.assign(n, {});
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (is_zero(P[i][k])) continue;
            for (const auto& [l, c] : g.d[k])
                for (int m = 0; m < n; ++m)
                    if (!is_zero((*Pinv)[l][m])) add_into(out.d[i], P[i][k] * c * (*Pinv)[l][m], {{m, Rational(1)}});
        }
    return out;
}

inline Rational random_small(std::mt19937_64& rng, int lo = -3, int hi = 3) {
    return Rational(std::uniform_int_distribution<int>(lo, hi)(rng));
}

// Random invertible matrix preserving the given degrees (unitriangular within each degree block).
inline Matrix random_graded_basis_change(std::mt19937_64& rng, const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    Matrix P = identity_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && degrees[i] == degrees[j]) P[i][j] = (i < j) ? random_small(rng, -2, 2) : Rational(0);
    Matrix Q = identity_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (degrees[i] == degrees[j]) Q[i][j] = random_small(rng, -1, 1);
    return multiply(Q, P);
}

// sl2 or a random 3-dimensional solvable algebra, tensored with Lambda(xi_1, xi_2), in a random graded basis.
inline Dgla random_dgla(std::mt19937_64& rng) {
    LieAlgebra g;
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        g = sl2();
    } else {
        Matrix A(2, std::vector<Rational>(2));
        for (auto& row : A)
            for (auto& c : row) c = random_small(rng);
        g = semidirect(A);
    }
    LieVector u;
    for (int a = 0; a < g.dim(); ++a) {
        Rational c = random_small(rng, -2, 2);
        if (!is_zero(c)) u[a] = c;
    }
    Dgla D = current_dgla(g, u);
    std::vector<int> deg;
    for (int i = 0; i < D.L.dim(); ++i) deg.push_back(D.L.degree(i));
    return change_basis(D, random_graded_basis_change(rng, deg));
}

// Adds a random nonzero amount to one degree-compatible structure constant, resampling until Jacobi fails.
inline Dgla jacobi_breaking_mutation(std::mt19937_64& rng, const Dgla& D) {
    const int n = D.L.dim();
    std::uniform_int_distribution<int> pick_gen(0, n - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const int i = pick_gen(rng), j = pick_gen(rng), k = pick_gen(rng);
        if (D.L.degree(k) != D.L.degree(i) + D.L.degree(j)) continue;
        if (i == j && (D.L.degree(i) & 1) == 0) continue;
        Rational delta = random_small(rng);
        if (is_zero(delta)) continue;
        Dgla M = D;
        LieVector v = M.L.bracket(i, j);
        add_into(v, delta, {{k, Rational(1)}});
        M.L.set_bracket(i, j, v);
        if (!check_jacobi(M.L).empty()) return M;
    }
    throw precondition_failed("no Jacobi-breaking single-constant mutation found");
}

// Random sparse V: Lambda^m A_1 -> A_2[1] of degree -1.
inline Homotopy random_homotopy(std::mt19937_64& rng, const LInftyStructure& S1, const LInftyStructure& S2, int m,
                                int density_percent = 30) {
    Homotopy V(S1, S2, m);
    std::uniform_int_distribution<int> percent(0, 99);
    for (const Word& w : S1.basis(m)) {
        if (percent(rng) >= density_percent) continue;
        int want = 0;
        for (int g : w) want += S1.degrees()[g] - 1;
        GradedTensor img = S2.element();
        for (int g = 0; g < S2.dim(); ++g)
            if (S2.degrees()[g] == want && percent(rng) < 50) img.add({g}, random_small(rng));
        if (!img.is_zero()) V.set(w, img);
    }
    return V;
}

} // namespace qpq
