#pragma once

#include "../core/matrix.hpp"
#include "../poly/polyvector.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qpq {

// Pushforward along y = A x: coefficients f(x) -> f(A^{-1} y), d/dx_i -> sum_j A_ji d/dy_j.
inline PolyVector linear_pushforward(const PolyVector& P, const Matrix& A) {
    const int n = P.dim();
    if (static_cast<int>(A.size()) != n) throw invalid_input("coordinate change has the wrong size");
    auto Ainv = inverse(A);
    if (!Ainv) throw invalid_input("coordinate change is singular");
    std::vector<PolyVector> x(n, PolyVector(n, P.order())), xi(n, PolyVector(n, P.order()));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (!is_zero((*Ainv)[i][k])) x[i] += PolyVector::coordinate(n, k, P.order()) * (*Ainv)[i][k];
            if (!is_zero(A[k][i])) xi[i] += PolyVector::partial(n, k, P.order()) * A[k][i];
        }
    PolyVector out(n, P.order());
    for (const auto& [key, c] : P.terms()) {
        PolyVector term = PolyVector::constant(n, Rational(1), P.order()) * c;
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < key.exps[i]; ++e) term = wedge(term, x[i]);
        for (int s : key.slots) term = wedge(term, xi[s]);
        out += term;
    }
    return out;
}

inline bool is_vector_field(const PolyVector& v) { return v.is_zero() || v.arity() == 1; }

inline bool is_linear_vector_field(const PolyVector& v) {
    for (const auto& [k, c] : v.terms()) {
        int deg = 0;
        for (int e : k.exps) deg += e;
        if (k.slots.size() != 1 || deg != 1) return false;
    }
    return true;
}

// A component phi^k evaluated on polyvector fields.
template <class T>
using PolyComponent = std::function<T(const std::vector<PolyVector>&)>;

struct GlobalizationDefect {
    std::string condition;
    std::size_t sample;
};

// phi(A.gamma_1, ..., A.gamma_k) = A.phi(gamma_1, ..., gamma_k) for every sample and coordinate change.
template <class T, class Act>
std::vector<GlobalizationDefect> equivariance_defects(const PolyComponent<T>& phi,
                                                      const std::vector<std::vector<PolyVector>>& samples,
                                                      const std::vector<Matrix>& changes, Act act_on_target) {
    std::vector<GlobalizationDefect> out;
    for (std::size_t s = 0; s < samples.size(); ++s)
        for (const Matrix& A : changes) {
            std::vector<PolyVector> moved;
            for (const auto& g : samples[s]) moved.push_back(linear_pushforward(g, A));
            if (!(phi(moved) == act_on_target(phi(samples[s]), A))) {
                out.push_back({"equivariance under linear coordinate changes", s});
                break;
            }
        }
    return out;
}

// phi(v_1, v_2) = 0 for vector fields v_1, v_2.
template <class T>
std::vector<GlobalizationDefect> vector_field_pair_defects(const PolyComponent<T>& phi2,
                                                           const std::vector<std::vector<PolyVector>>& samples) {
    std::vector<GlobalizationDefect> out;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& p = samples[s];
        if (p.size() != 2 || !is_vector_field(p[0]) || !is_vector_field(p[1]))
            throw invalid_input("samples must be pairs of vector fields");
        if (!phi2(p).is_zero()) out.push_back({"vanishing on pairs of vector fields", s});
    }
    return out;
}

// phi(v, gamma_2, ..., gamma_n) = 0 for n >= 2 and a linear vector field v.
template <class T>
std::vector<GlobalizationDefect> linear_field_defects(const PolyComponent<T>& phi,
                                                      const std::vector<std::vector<PolyVector>>& samples) {
    std::vector<GlobalizationDefect> out;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& p = samples[s];
        if (p.size() < 2 || !is_linear_vector_field(p[0]))
            throw invalid_input("samples must start with a linear vector field and have at least two entries");
        if (!phi(p).is_zero()) out.push_back({"vanishing on a linear vector field", s});
    }
    return out;
}

} // namespace qpq
