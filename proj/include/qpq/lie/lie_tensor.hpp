#pragma once

#include "lie_algebra.hpp"

#include <vector>

namespace qpq {

// Elements of the exterior algebra on L, i.e. the graded-symmetric algebra on L[1].
using LieTensor = GradedTensor;

inline LieTensor lie_tensor(const LieAlgebra& L, int order = default_hbar_order) {
    return LieTensor(L.degree_table(), Symmetry::exterior, order);
}

inline LieTensor lie_generator(const LieAlgebra& L, int i, const Rational& c = 1, int order = default_hbar_order) {
    LieTensor t = lie_tensor(L, order);
    t.add({i}, c);
    return t;
}

inline LieTensor lie_word(const LieAlgebra& L, const Word& w, const Rational& c = 1, int order = default_hbar_order) {
    LieTensor t = lie_tensor(L, order);
    t.add(w, c);
    return t;
}

inline int shifted_parity(const LieAlgebra& L, int g) { return (L.degree(g) + 1) & 1; }

// Algebraic Schouten bracket on the exterior algebra of L:
// [A, B] = sum_{i,j} (A d/da_i from the right) [a_i, b_j] (d/db_j B from the left).
inline LieTensor schouten_algebraic(const LieAlgebra& L, const LieTensor& A, const LieTensor& B) {
    LieTensor out(L.degree_table(), Symmetry::exterior, std::min(A.order(), B.order()));
    for (const auto& [a, ca] : A.terms())
        for (const auto& [b, cb] : B.terms()) {
            const HbarSeries cab = ca * cb;
            for (std::size_t i = 0; i < a.size(); ++i) {
                long after = 0;
                for (std::size_t k = i + 1; k < a.size(); ++k) after += shifted_parity(L, a[k]);
                const int s1 = parity_sign(shifted_parity(L, a[i]) * after);
                for (std::size_t j = 0; j < b.size(); ++j) {
                    long before = 0;
                    for (std::size_t k = 0; k < j; ++k) before += shifted_parity(L, b[k]);
                    const int s2 = parity_sign(shifted_parity(L, b[j]) * before);
                    for (const auto& [c, v] : L.bracket(a[i], b[j])) {
                        Word w;
                        for (std::size_t k = 0; k < a.size(); ++k)
                            if (k != i) w.push_back(a[k]);
                        w.push_back(c);
                        for (std::size_t k = 0; k < b.size(); ++k)
                            if (k != j) w.push_back(b[k]);
                        out.add(w, cab * Rational(v * (s1 * s2)));
                    }
                }
            }
        }
    return out;
}

struct InvarianceDefect {
    int generator;
    LieTensor residual;
};

inline std::vector<InvarianceDefect> adjoint_invariance(const LieAlgebra& L, const LieTensor& t) {
    std::vector<InvarianceDefect> out;
    for (int x = 0; x < L.dim(); ++x) {
        LieTensor r = schouten_algebraic(L, lie_generator(L, x, 1, t.order()), t);
        if (!r.is_zero()) out.push_back({x, std::move(r)});
    }
    return out;
}

// delta_r(x) = [x, r] for every generator x.
inline std::vector<LieTensor> coboundary_cobracket(const LieAlgebra& L, const LieTensor& r) {
    std::vector<LieTensor> out;
    for (int x = 0; x < L.dim(); ++x) out.push_back(schouten_algebraic(L, lie_generator(L, x, 1, r.order()), r));
    return out;
}

// Extends per-generator images to a derivation of the exterior algebra with the given parity.
inline LieTensor apply_derivation(const LieTensor& t, const std::vector<LieTensor>& images, int parity) {
    LieTensor out = t.empty_like();
    const auto& deg = t.degrees();
    for (const auto& [w, c] : t.terms()) {
        long before = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const int s = parity_sign(static_cast<long>(parity & 1) * before);
            for (const auto& [iw, ic] : images.at(w[i]).terms()) {
                Word nw(w.begin(), w.begin() + i);
                nw.insert(nw.end(), iw.begin(), iw.end());
                nw.insert(nw.end(), w.begin() + i + 1, w.end());
                out.add(nw, s > 0 ? c * ic : -(c * ic));
            }
            before += (deg[w[i]] + 1) & 1;
        }
    }
    return out;
}

// D(D(x)) where D is the odd derivation extending the cobracket.
inline std::vector<InvarianceDefect> cojacobi_residual(const std::vector<LieTensor>& delta) {
    std::vector<InvarianceDefect> out;
    for (std::size_t x = 0; x < delta.size(); ++x) {
        LieTensor r = apply_derivation(delta[x], delta, 1);
        if (!r.is_zero()) out.push_back({static_cast<int>(x), std::move(r)});
    }
    return out;
}

inline std::string lie_tensor_string(const LieAlgebra& L, const LieTensor& t) {
    std::string s;
    for (const auto& [w, c] : t.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "^" : " ") + L.name(w[i]);
    }
    return s.empty() ? "0" : s;
}

} // namespace qpq
