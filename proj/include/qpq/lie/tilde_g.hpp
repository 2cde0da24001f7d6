#pragma once

#include "lie_tensor.hpp"

#include <sstream>

namespace qpq {

struct TildeG {
    LieAlgebra algebra;
    LieTensor r;                      // r embedded in the g summand
    std::vector<LieTensor> cobracket; // delta(x) = [x, r] on every generator
    int central = 0;                  // index of c
    int v_offset = 1;                 // V[1] generators
    int vdual_offset = 1;             // V* generators
    int g_offset = 1;                 // generators of g
};

// R + V[1] + V* + g with [v*_a, v_b] = delta_ab c, degrees V[1]:-1, V*:0 and c:-1
// so that the pairing is degree-preserving,
// and the coboundary cobracket [-, r] of g extended by zero on the Heisenberg part.
inline TildeG build_tilde_g(int V_dim, const LieAlgebra& g, const LieTensor& r) {
    if (V_dim < 0) throw invalid_input("negative V dimension");
    auto rr = schouten_algebraic(g, r, r);
    auto defects = adjoint_invariance(g, rr);
    if (!defects.empty()) {
        std::ostringstream os;
        for (const auto& d : defects)
            for (const auto& [w, c] : d.residual.terms()) {
                os << "[" << g.name(d.generator) << ",[r,r]] word(";
                for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << g.name(w[i]);
                os << ") = " << c.str() << "; ";
            }
        throw precondition_failed("[r,r] is not invariant", os.str());
    }
    std::vector<Generator> gens{{"c", V_dim > 0 ? -1 : 0}};
    for (int a = 1; a <= V_dim; ++a) gens.push_back({"v" + std::to_string(a), -1});
    for (int a = 1; a <= V_dim; ++a) gens.push_back({"v*" + std::to_string(a), 0});
    const int g_off = 1 + 2 * V_dim;
    for (const auto& x : g.generators()) gens.push_back(x);

    TildeG out;
    out.algebra = LieAlgebra(gens);
    out.v_offset = 1;
    out.vdual_offset = 1 + V_dim;
    out.g_offset = g_off;
    for (int a = 0; a < V_dim; ++a) out.algebra.set_bracket(1 + a, 1 + V_dim + a, {{0, Rational(-1)}});
    for (const auto& [ij, v] : g.stored_brackets()) {
        LieVector shifted;
        for (const auto& [k, c] : v) shifted[k + g_off] = c;
        out.algebra.set_bracket(ij.first + g_off, ij.second + g_off, shifted);
    }
    out.r = lie_tensor(out.algebra, r.order());
    for (const auto& [w, c] : r.terms()) {
        Word s;
        for (int x : w) s.push_back(x + g_off);
        out.r.add(s, c);
    }
    out.cobracket = coboundary_cobracket(out.algebra, out.r);
    return out;
}

} // namespace qpq
