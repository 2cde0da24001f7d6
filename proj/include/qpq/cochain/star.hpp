#pragma once

#include "../core/linear.hpp"
#include "../linfty/gauge.hpp"
#include "calculus.hpp"

#include <optional>
#include <set>

namespace qpq {

// Sorted words of length len over generators 0..dim-1.
inline std::vector<Monomial> pbw_monomials(int dim, int len) {
    std::vector<Monomial> out;
    Monomial m(len, 0);
    if (len == 0) return {m};
    if (dim == 0) return out;
    while (true) {
        out.push_back(m);
        int i = len - 1;
        while (i >= 0 && m[i] == dim - 1) --i;
        if (i < 0) break;
        ++m[i];
        for (int j = i + 1; j < len; ++j) m[j] = m[i];
    }
    return out;
}

// Normalized cochains (no empty slot) of the given arity and total PBW length.
inline std::vector<std::vector<Monomial>> normalized_basis(int dim, int arity, int total) {
    std::vector<std::vector<Monomial>> out;
    std::vector<Monomial> key(arity);
    auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == arity - 1) {
            if (left < 1) return;
            for (const auto& m : pbw_monomials(dim, left)) {
                key[slot] = m;
                out.push_back(key);
            }
            return;
        }
        for (int l = 1; l <= left - (arity - 1 - slot); ++l)
            for (const auto& m : pbw_monomials(dim, l)) {
                key[slot] = m;
                self(self, slot + 1, left - l);
            }
    };
    if (arity > 0) rec(rec, 0, total);
    return out;
}

inline SparseVector<std::vector<Monomial>> to_sparse(const UTensor& rational_part) {
    SparseVector<std::vector<Monomial>> v;
    for (const auto& [k, c] : rational_part.terms()) v[k] = c.coeff(0);
    return v;
}

inline std::set<int> total_lengths(const UTensor& t) {
    std::set<int> out;
    for (const auto& [k, c] : t.terms()) {
        int l = 0;
        for (const auto& m : k) l += static_cast<int>(m.size());
        out.insert(l);
    }
    return out;
}

struct HochschildSolve {
    UTensor solution;   // u with b(u) = target - remainder
    UTensor remainder;  // zero iff target is exact in the searched degrees
};

// Solves b(u) = target over normalized arity-(n-1) cochains of the target's total lengths.
// Columns are inserted by increasing total length, then lexicographically.
inline HochschildSolve solve_hochschild(const CochainCalculus& C, const UTensor& target) {
    if (!C.hopf().is_primitive()) throw unsupported("linear solving requires the primitive coproduct");
    const int arity = target.arity() - 1;
    const int order = target.order();
    std::vector<std::vector<Monomial>> columns;
    for (int l : total_lengths(target)) {
        auto basis = normalized_basis(C.hopf().algebra().dim(), arity, l);
        for (auto& key : basis)
            if (std::all_of(key.begin(), key.end(), [&](const Monomial& m) { return C.hopf().uea().is_pbw(m); }))
                columns.push_back(std::move(key));
    }
    RowReducer<std::vector<Monomial>> rr;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        UTensor u(arity, order);
        u.add(columns[j], Rational(1));
        UTensor bu = C.hochschild(u).component(arity + 1, order);
        rr.insert(to_sparse(bu), {{static_cast<int>(j), Rational(1)}});
    }
    auto [rem, combo] = rr.reduce(to_sparse(target));
    HochschildSolve out{UTensor(arity, order), UTensor(arity + 1, order)};
    for (const auto& [j, c] : combo) out.solution.add(columns[j], c);
    for (const auto& [k, c] : rem) out.remainder.add(k, c);
    return out;
}

// 1 + hbar^2 Z'/6 with Z' = -Z/2, where Z = [pi, pi] in this library's Schouten normalization;
// the order-2 equation of solve_star_order is solvable exactly for this coefficient.
inline Associator quasi_poisson_associator(const CochainCalculus& C, const LieTensor& Z, int order) {
    return Associator::make(C.hopf(), C.one(3, order) + alt_embed(Z, order) * HbarSeries::monomial(rat(-1, 12), 2, order));
}

struct StarSolveReport {
    bool solved = false;
    int failed_order = -1;
    std::optional<StarProduct> product;
    UTensor obstruction;        // order-k associativity defect, a 3-cocycle
    UTensor obstruction_class;  // the defect reduced modulo exact cochains
};

// Order-by-order solution of m^{12,3} m^{1,2} = m^{1,23} m^{2,3} Phi with m_1 = Alt(pi)/2.
inline StarSolveReport solve_star_order(const CochainCalculus& C, const LieTensor& pi, const LieTensor& Z,
                                        const Associator& phi, int N) {
    const auto& L = C.hopf().algebra();
    if (pi.arity() != 2 && !pi.is_zero()) throw invalid_input("pi must be a bivector");
    if (Z.arity() != 3 && !Z.is_zero()) throw invalid_input("Z must be a trivector");
    if (N < 1 || N > phi.order()) throw invalid_input("working order must lie in [1, associator order]");
    LieTensor qp = schouten_algebraic(L, pi, pi) - Z;
    if (!qp.is_zero()) throw precondition_failed("[pi, pi] differs from Z", lie_tensor_string(L, qp));
    UTensor pent = C.pentagon_residual(phi).truncated(N);
    if (!pent.is_zero()) throw precondition_failed("pentagon residual is nonzero", Associator::to_string_tensor(C.hopf(), pent));

    UTensor m = C.one(2, N);
    if (!pi.is_zero()) m += alt_embed(pi, N) * HbarSeries::monomial(rat(1, 2), 1, N);
    StarSolveReport rep;
    for (int k = 2; k <= N; ++k) {
        UTensor R = C.phi_assoc_residual(StarProduct(C.hopf(), m), phi).hbar_part(k);
        if (R.is_zero()) continue;
        HochschildSolve s = solve_hochschild(C, -R);
        if (!s.remainder.is_zero()) {
            rep.failed_order = k;
            rep.obstruction = R;
            rep.obstruction_class = s.remainder;
            return rep;
        }
        m += s.solution * HbarSeries::monomial(1, k, N);
    }
    rep.solved = true;
    rep.product = StarProduct(C.hopf(), m);
    return rep;
}

// The cochain DGLA (Hochschild differential, Gerstenhaber bracket) as a gauge model.
struct CochainDgla {
    const CochainCalculus& C;
    using Element = Cochain;
    Cochain d(const Cochain& x) const { return C.hochschild(x); }
    Cochain bracket(const Cochain& x, const Cochain& y) const { return C.gerstenhaber(x, y); }
    int valuation(const Cochain& x) const { return x.valuation(); }
};

// Each order of m - 1 (x) 1 reduced modulo exact cochains, gauging by hbar^k times the
// solving arity-1 cochain. Gauge-equivalent products with the same residual freedom agree.
inline StarProduct star_normal_form(const CochainCalculus& C, const StarProduct& m) {
    const int N = m.order();
    const UTensor m0 = C.one(2, N);
    Cochain x(m.element() - m0);
    CochainDgla model{C};
    for (int k = 1; k <= N; ++k) {
        UTensor ck = x.component(2, N).hbar_part(k);
        if (ck.is_zero()) continue;
        HochschildSolve s = solve_hochschild(C, ck);
        if (s.solution.is_zero()) continue;
        x = gauge_transform(model, x, Cochain(s.solution * HbarSeries::monomial(1, k, N)), N);
    }
    return StarProduct(C.hopf(), m0 + x.component(2, N));
}

} // namespace qpq
