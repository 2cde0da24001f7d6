#pragma once

#include "../lie/lie_tensor.hpp"
#include "../core/linear.hpp"
#include "polynomial.hpp"

#include <optional>

namespace qpq {

// Coordinates on e_{i_1} ^ ... ^ e_{i_k} for strictly increasing index lists; e_i ^ e_j = e_i (x) e_j - e_j (x) e_i.
using Alternating = std::map<std::vector<int>, RationalFunction>;

// Adds c to the entry of the (unsorted) index list with its permutation sign; repeated indices vanish.
inline void add_alternating(Alternating& t, std::vector<int> idx, const RationalFunction& c) {
    if (c.is_zero()) return;
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return;
            if (idx[i] > idx[j]) sign = -sign;
        }
    std::sort(idx.begin(), idx.end());
    auto [it, fresh] = t.try_emplace(idx, sign > 0 ? c : -c);
    if (!fresh) {
        it->second += sign > 0 ? c : -c;
        if (it->second.is_zero()) t.erase(it);
    }
}

inline RationalFunction alternating_entry(const Alternating& t, std::vector<int> idx, int nvars) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return RationalFunction(nvars);
            if (idx[i] > idx[j]) sign = -sign;
        }
    std::sort(idx.begin(), idx.end());
    auto it = t.find(idx);
    if (it == t.end()) return RationalFunction(nvars);
    return sign > 0 ? it->second : -it->second;
}

// rho: h^* -> Lambda^2 g; lambda_i is the coordinate dual to h[i].
struct DynamicalRMatrix {
    LieAlgebra g;
    std::vector<LieVector> h;
    Alternating value;

    int nvars() const { return static_cast<int>(h.size()); }

    RationalFunction component(int a, int b) const { return alternating_entry(value, {a, b}, nvars()); }

    void validate() const {
        for (int i = 0; i < g.dim(); ++i)
            if (g.degree(i) != 0) throw unsupported("dynamical r-matrices are implemented for ungraded Lie algebras");
        RowReducer<int> R;
        for (std::size_t i = 0; i < h.size(); ++i) {
            SparseVector<int> v;
            for (const auto& [k, c] : h[i]) {
                if (k < 0 || k >= g.dim()) throw invalid_input("h basis vector index out of range");
                v[k] = c;
            }
            if (!R.insert(v, {{static_cast<int>(i), Rational(1)}})) throw invalid_input("h basis is not independent");
        }
        for (const auto& [idx, c] : value) {
            if (idx.size() != 2 || idx[0] >= idx[1] || idx[0] < 0 || idx[1] >= g.dim())
                throw invalid_input("rho entries must be indexed by pairs i < j of generators");
            if (c.nvars() != nvars()) throw invalid_input("rho coefficients must use one variable per h basis vector");
        }
    }
};

inline DynamicalRMatrix make_dynamical_r(LieAlgebra g, std::vector<LieVector> h, Alternating value) {
    DynamicalRMatrix r{std::move(g), std::move(h), std::move(value)};
    r.validate();
    return r;
}

// [rho^{12}, rho^{13}] + [rho^{12}, rho^{23}] + [rho^{13}, rho^{23}] on strictly increasing (p, q, r).
inline Alternating cyb(const DynamicalRMatrix& rho) {
    const int n = rho.g.dim(), m = rho.nvars();
    std::vector<std::vector<RationalFunction>> R(n, std::vector<RationalFunction>(n, RationalFunction(m)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) R[a][b] = rho.component(a, b);
    auto f = [&](int a, int c, int p) {
        auto v = rho.g.bracket(a, c);
        auto it = v.find(p);
        return it == v.end() ? Rational(0) : it->second;
    };
    Alternating out;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            for (int r = q + 1; r < n; ++r) {
                RationalFunction t(m);
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c) {
                        Rational s1 = f(a, c, p), s2 = f(a, c, q), s3 = f(a, c, r);
                        if (!is_zero(s1) && !R[a][q].is_zero() && !R[c][r].is_zero()) t += R[a][q] * R[c][r] * s1;
                        if (!is_zero(s2) && !R[p][a].is_zero() && !R[c][r].is_zero()) t += R[p][a] * R[c][r] * s2;
                        if (!is_zero(s3) && !R[p][a].is_zero() && !R[q][c].is_zero()) t += R[p][a] * R[q][c] * s3;
                    }
                add_alternating(out, {p, q, r}, t);
            }
    return out;
}

// sum_i h_i^1 d_i rho^{23} - h_i^2 d_i rho^{13} + h_i^3 d_i rho^{12}.
inline Alternating alt_d(const DynamicalRMatrix& rho) {
    const int m = rho.nvars();
    Alternating out;
    for (int i = 0; i < m; ++i) {
        Alternating dr;
        for (const auto& [idx, c] : rho.value) add_alternating(dr, idx, c.derivative(i));
        for (const auto& [x, hx] : rho.h[i])
            for (const auto& [idx, c] : dr) {
                add_alternating(out, {x, idx[0], idx[1]}, c * hx);
            }
    }
    return out;
}

inline Alternating alternating_from_tensor(const LieTensor& t, int nvars) {
    Alternating out;
    for (const auto& [w, c] : t.terms()) {
        if (c.valuation() != 0 || !(c == HbarSeries(c.coeff(0), c.order())))
            throw invalid_input("tensor coefficients must be hbar-free");
        add_alternating(out, w, RationalFunction::constant(nvars, c.coeff(0)));
    }
    return out;
}

inline Alternating operator+(Alternating a, const Alternating& b) {
    for (const auto& [idx, c] : b) add_alternating(a, idx, c);
    return a;
}

inline Alternating operator-(Alternating a, const Alternating& b) {
    for (const auto& [idx, c] : b) add_alternating(a, idx, -c);
    return a;
}

// -Alt(d rho) + CYB(rho) - Z.
inline Alternating cdybe_residual(const DynamicalRMatrix& rho, const LieTensor& Z) {
    for (const auto& [w, c] : Z.terms())
        if (w.size() != 3) throw invalid_input("Z must have arity 3");
    const auto defects = adjoint_invariance(rho.g, Z);
    if (!defects.empty())
        throw precondition_failed("Z is not ad-invariant", lie_tensor_string(rho.g, defects.front().residual));
    return cyb(rho) - alt_d(rho) - alternating_from_tensor(Z, rho.nvars());
}

// The constant Z making the residual vanish, when -Alt(d rho) + CYB(rho) is constant.
inline std::optional<LieTensor> constant_z_solution(const DynamicalRMatrix& rho) {
    LieTensor Z = lie_tensor(rho.g);
    for (const auto& [idx, c] : cyb(rho) - alt_d(rho)) {
        if (!c.is_constant()) return std::nullopt;
        Z.add(idx, c.constant_value());
    }
    return Z;
}

// ad_x on an alternating tensor with constant structure constants.
inline Alternating ad_alternating(const LieAlgebra& g, const LieVector& x, const Alternating& t) {
    Alternating out;
    for (const auto& [idx, c] : t)
        for (std::size_t s = 0; s < idx.size(); ++s)
            for (const auto& [a, xa] : x)
                for (const auto& [k, v] : g.bracket(a, idx[s])) {
                    std::vector<int> w = idx;
                    w[s] = k;
                    add_alternating(out, w, c * (xa * v));
                }
    return out;
}

struct EquivarianceDefect {
    int h_index;
    Alternating residual;
};

// For abelian h the coadjoint term vanishes, so equivariance is ad_{h_i} rho(lambda) = 0.
inline std::vector<EquivarianceDefect> h_equivariance_residual(const DynamicalRMatrix& rho) {
    for (std::size_t i = 0; i < rho.h.size(); ++i)
        for (std::size_t j = i + 1; j < rho.h.size(); ++j)
            if (!rho.g.bracket(rho.h[i], rho.h[j]).empty())
                throw unsupported("h-equivariance is implemented for abelian h only");
    std::vector<EquivarianceDefect> out;
    for (int i = 0; i < rho.nvars(); ++i) {
        Alternating r = ad_alternating(rho.g, rho.h[i], rho.value);
        if (!r.empty()) out.push_back({i, std::move(r)});
    }
    return out;
}

// g = h + m as vector spaces with [h, m] in m.
inline void validate_reductive(const LieAlgebra& g, const std::vector<LieVector>& h, const std::vector<LieVector>& m) {
    if (static_cast<int>(h.size() + m.size()) != g.dim()) throw invalid_input("h and m do not span g");
    RowReducer<int> R;
    int tag = 0;
    for (const auto* part : {&h, &m})
        for (const auto& v : *part) {
            if (!R.insert(v, {{tag++, Rational(1)}})) throw invalid_input("h + m is not a direct sum");
        }
    RowReducer<int> M;
    for (std::size_t i = 0; i < m.size(); ++i) M.insert(m[i], {{static_cast<int>(i), Rational(1)}});
    for (const auto& x : h)
        for (const auto& y : m) {
            if (!M.reduce(g.bracket(x, y)).first.empty()) throw invalid_input("[h, m] is not contained in m");
        }
}

inline std::string alternating_string(const LieAlgebra& g, const Alternating& t) {
    if (t.empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : t) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "^" : " ") + g.name(idx[i]);
    }
    return out;
}

} // namespace qpq
