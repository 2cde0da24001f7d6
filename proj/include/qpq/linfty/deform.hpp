#pragma once

#include "gauge.hpp"
#include "structure.hpp"

namespace qpq {

// V: Lambda^m A_1 -> A_2[1] of degree -1.
class Homotopy {
public:
    Homotopy(const LInftyStructure& source, const LInftyStructure& target, int m)
        : m_(m), f_(source.degree_table(), target.degree_table(), std::max(m, 1), -1,
                   std::min(source.order(), target.order())) {
        if (m < 1) throw invalid_input("homotopy arity must be at least 1");
    }

    int arity() const { return m_; }
    const ComponentFamily& family() const { return f_; }

    void set(const Word& in, const GradedTensor& out) {
        if (static_cast<int>(in.size()) != m_) throw invalid_input("homotopy input has the wrong arity");
        f_.set(in, out);
    }
    GradedTensor apply_word(const Word& w) const { return f_.apply_word(w); }
    GradedTensor apply_at(const GradedTensor& x) const { return f_.apply_at(x, m_); }

    // Extension along phi: V on one block of size m, phi on the others.
    GradedTensor extend(const LInftyMorphism& phi, const Word& w) const {
        GradedTensor out = f_.target_element();
        const int n = static_cast<int>(w.size());
        if (n < m_) return out;
        const auto& deg = *f_.source();
        for (const auto& blocks : set_partitions(n))
            for (std::size_t marked = 0; marked < blocks.size(); ++marked) {
                if (static_cast<int>(blocks[marked].size()) != m_) continue;
                std::vector<std::vector<int>> ordered{blocks[marked]};
                GradedTensor prod = f_.apply_word(pick(w, blocks[marked]));
                for (std::size_t b = 0; b < blocks.size() && !prod.is_zero(); ++b) {
                    if (b == marked) continue;
                    ordered.push_back(blocks[b]);
                    prod = graded_product(prod, phi.component(pick(w, blocks[b])));
                }
                if (!prod.is_zero()) out += prod * Rational(block_sign(w, deg, ordered));
            }
        return out;
    }

private:
    int m_;
    ComponentFamily f_;
};

// int_0^{t_j} l_i(t) dt for the Lagrange basis on the nodes 0..P.
inline std::vector<std::vector<Rational>> lagrange_integration_weights(int P) {
    std::vector<std::vector<Rational>> W(P + 1, std::vector<Rational>(P + 1));
    for (int i = 0; i <= P; ++i) {
        std::vector<Rational> poly{Rational(1)};
        Rational denom(1);
        for (int k = 0; k <= P; ++k) {
            if (k == i) continue;
            std::vector<Rational> next(poly.size() + 1);
            for (std::size_t e = 0; e < poly.size(); ++e) {
                next[e + 1] += poly[e];
                next[e] -= poly[e] * k;
            }
            poly = std::move(next);
            denom *= (i - k);
        }
        for (int j = 0; j <= P; ++j) {
            Rational acc(0), tp(j);
            for (std::size_t e = 0; e < poly.size(); ++e) {
                acc += poly[e] * tp / Rational(static_cast<long>(e + 1));
                tp *= j;
            }
            W[j][i] = acc / denom;
        }
    }
    return W;
}

// Time-one flow of phi_t' = pr_1(D_2 V_t + V_t D_1), V_t the extension of V along phi_t.
// Components of arity below m are unchanged; arity m changes by d_2 V + V d_1.
inline LInftyMorphism deform_morphism(const LInftyMorphism& phi, const Homotopy& V, const LInftyStructure& S1,
                                      const LInftyStructure& S2) {
    const int K = phi.bound();
    if (phi.source_degrees() != S1.degrees() || *V.family().source() != S1.degrees() ||
        *V.family().target() != S2.degrees())
        throw invalid_input("homotopy and morphism spaces do not match the structures");
    const int m = V.arity();
    const int P = K;
    const auto W = lagrange_integration_weights(P);
    std::vector<LInftyMorphism> at(P + 1, phi);
    for (int n = m; n <= K; ++n) {
        const auto words = S1.basis(n);
        std::vector<std::vector<GradedTensor>> der(P + 1);
        for (int j = 0; j <= P; ++j)
            for (const Word& w : words) {
                GradedTensor x = S1.element();
                x.add(w, Rational(1));
                der[j].push_back(S2.corestriction(V.extend(at[j], w)) + V.apply_at(S1.coderivation(x)));
            }
        for (int j = 0; j <= P; ++j)
            for (std::size_t a = 0; a < words.size(); ++a) {
                GradedTensor v = phi.component(words[a]);
                for (int i = 0; i <= P; ++i)
                    if (!is_zero(W[j][i])) v += der[i][a] * W[j][i];
                at[j].set(words[a], v);
            }
    }
    return at[1];
}

// DGLA-shaped structure seen as a model for gauge_transform: d = -q_1, [g, x] = q_2(g x).
class LInftyGaugeModel {
public:
    using Element = GradedTensor;
    explicit LInftyGaugeModel(const LInftyStructure& S) : S_(S) {
        if (!is_dgla_shaped(S)) throw unsupported("gauge action is implemented for DGLA-shaped structures");
    }
    Element d(const Element& x) const { return -S_.corestriction(x); }
    Element bracket(const Element& g, const Element& x) const { return S_.corestriction(graded_product(g, x)); }
    int valuation(const Element& x) const { return hbar_valuation(x); }

private:
    const LInftyStructure& S_;
};

inline GradedTensor gauge_transform(const GradedTensor& pi, const GradedTensor& g, const LInftyStructure& S, int N) {
    for (const auto& [w, c] : g.terms())
        if (w.size() != 1 || S.degrees().at(w[0]) != 0) throw invalid_input("gauge generator must lie in degree zero");
    return truncate_hbar(gauge_transform(LInftyGaugeModel(S), pi, g, N), N);
}

} // namespace qpq
