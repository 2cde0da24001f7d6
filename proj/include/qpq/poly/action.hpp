#pragma once

#include "../lie/lie_tensor.hpp"
#include "polyvector.hpp"

namespace qpq {

// gamma: L -> Vect(R^m), one polynomial vector field per generator.
class ActionMap {
public:
    ActionMap(LieAlgebra L, std::vector<PolyVector> fields) : L_(std::move(L)), fields_(std::move(fields)) {
        if (static_cast<int>(fields_.size()) != L_.dim()) throw invalid_input("one vector field per generator required");
        for (int i = 0; i < L_.dim(); ++i) {
            if (L_.degree(i) != 0) throw unsupported("actions are supported for degree-0 generators only");
            if (fields_[i].arity() > 1 || (fields_[i].arity() == 0 && !fields_[i].is_zero()))
                throw invalid_input("action images must be vector fields");
            if (fields_[i].dim() != fields_.front().dim()) throw invalid_input("inconsistent ambient dimension");
        }
    }

    const LieAlgebra& algebra() const { return L_; }
    const std::vector<PolyVector>& fields() const { return fields_; }
    const PolyVector& field(int i) const { return fields_.at(i); }
    int dim() const { return fields_.empty() ? 0 : fields_.front().dim(); }

private:
    LieAlgebra L_;
    std::vector<PolyVector> fields_;
};

struct PolyDefect {
    int i = 0, j = 0;
    PolyVector residual;
};

// gamma([x_i, x_j]) - [gamma x_i, gamma x_j] for i < j.
inline std::vector<PolyDefect> homomorphism_residual(const ActionMap& act) {
    std::vector<PolyDefect> out;
    const auto& L = act.algebra();
    for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j) {
            PolyVector r(act.dim());
            for (const auto& [k, c] : L.bracket(i, j)) r += act.field(k) * c;
            r -= schouten_bracket(act.field(i), act.field(j));
            if (!r.is_zero()) out.push_back({i, j, std::move(r)});
        }
    return out;
}

inline PolyVector gamma_push(const LieTensor& t, const ActionMap& act) {
    auto defects = homomorphism_residual(act);
    if (!defects.empty())
        throw precondition_failed("action map is not a homomorphism", defects.front().residual.str());
    PolyVector out(act.dim(), t.order());
    for (const auto& [w, c] : t.terms()) {
        PolyVector term = PolyVector::constant(act.dim(), 1, t.order());
        for (int g : w) term = wedge(term, act.field(g));
        out += term * c;
    }
    return out;
}

// [gamma(x), P] for every generator x; empty when P is invariant.
inline std::vector<PolyDefect> invariance_residual(const PolyVector& P, const ActionMap& act) {
    std::vector<PolyDefect> out;
    for (int i = 0; i < act.algebra().dim(); ++i) {
        PolyVector r = schouten_bracket(act.field(i), P);
        if (!r.is_zero()) out.push_back({i, i, std::move(r)});
    }
    return out;
}

struct QuasiPoissonReport {
    PolyVector residual;                  // [pi, pi] - gamma(Z)
    std::vector<PolyDefect> invariance;   // [gamma(x), pi] defects
    bool quasi_poisson() const { return residual.is_zero() && invariance.empty(); }
};

inline QuasiPoissonReport quasi_poisson_residual(const PolyVector& pi, const LieTensor& Z, const ActionMap& act) {
    if (pi.arity() > 2 || (pi.arity() != 2 && !pi.is_zero())) throw invalid_input("pi must be a bivector");
    QuasiPoissonReport rep;
    rep.residual = schouten_bracket(pi, pi) - gamma_push(Z, act);
    rep.invariance = invariance_residual(pi, act);
    return rep;
}

// [r, pi] + 1/2 [pi, pi] truncated at the working order.
inline PolyVector mc_residual(const PolyVector& pi_h, const PolyVector& r_field) {
    if (!pi_h.is_zero() && pi_h.valuation() < 1) throw invalid_input("pi_h must have hbar-valuation >= 1");
    return schouten_bracket(r_field, pi_h) + schouten_bracket(pi_h, pi_h) * rat(1, 2);
}

} // namespace qpq
