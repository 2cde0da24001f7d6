#pragma once

#include "cochain.hpp"

#include <numeric>

namespace qpq {

class CochainCalculus {
public:
    explicit CochainCalculus(HopfModel H, CochainBounds b = {}) : H_(std::move(H)), b_(b) { require_even(H_); }

    const HopfModel& hopf() const { return H_; }
    const CochainBounds& bounds() const { return b_; }

    UTensor ins(const UTensor& t, std::vector<std::vector<int>> blocks, int n) const {
        return insertion(H_, t, BlockPartition(std::move(blocks), n));
    }
    UTensor mul(const UTensor& a, const UTensor& b) const { return H_.multiply(a, b); }
    UTensor one(int n, int order) const { return H_.one(n, order); }
    UTensor inverse(const UTensor& t) const { return series_inverse(H_, t); }

    Cochain brace(const Cochain& D, const Cochain& E) const {
        Cochain out;
        for (const auto& [d, x] : D.components())
            for (const auto& [e, y] : E.components()) out.add(brace_b1n(H_, x, {y}, b_.arity));
        return out;
    }

    Cochain gerstenhaber(const Cochain& D, const Cochain& E) const {
        Cochain out;
        for (const auto& [d, x] : D.components())
            for (const auto& [e, y] : E.components()) out.add(gerstenhaber_b11(H_, x, y, b_.arity));
        return out;
    }

    Cochain hochschild(const Cochain& D) const {
        Cochain out;
        for (const auto& [d, x] : D.components()) out.add(cohochschild(H_, x, b_.arity));
        return out;
    }

    Cochain brace_phi(const Cochain& D, const Cochain& E, const Associator& phi) const {
        if (!phi.certified()) throw precondition_failed("associator carries no invariance certificate", "");
        const UTensor phinv = inverse(phi.element());
        Cochain out;
        for (const auto& [d, x] : D.components())
            for (const auto& [e, y] : E.components()) out.add(brace_phi_component(x, y, phinv));
        return out;
    }

    // [D,E]_Phi = {D|E}_Phi - (-1)^{(d-1)(e-1)} {E|D}_Phi on homogeneous parts.
    Cochain bracket_phi(const Cochain& D, const Cochain& E, const Associator& phi) const {
        if (!phi.certified()) throw precondition_failed("associator carries no invariance certificate", "");
        const UTensor phinv = inverse(phi.element());
        Cochain out;
        for (const auto& [d, x] : D.components())
            for (const auto& [e, y] : E.components()) {
                out.add(brace_phi_component(x, y, phinv));
                UTensor back = brace_phi_component(y, x, phinv);
                out.add((static_cast<long>(d - 1) * (e - 1)) & 1 ? back : -back);
            }
        return out;
    }

    // Phi^{1,2,34} Phi^{12,3,4} - Phi^{2,3,4} Phi^{1,23,4} Phi^{1,2,3}.
    UTensor pentagon_residual(const Associator& phi) const {
        const UTensor& p = phi.element();
        UTensor lhs = mul(ins(p, {{1}, {2}, {3, 4}}, 4), ins(p, {{1, 2}, {3}, {4}}, 4));
        UTensor rhs = mul(mul(ins(p, {{2}, {3}, {4}}, 4), ins(p, {{1}, {2, 3}, {4}}, 4)), ins(p, {{1}, {2}, {3}}, 4));
        return lhs - rhs;
    }

    // J^{1,2} J^{12,3} - J^{2,3} J^{1,23} Phi.
    UTensor twist_residual(const Twist& J, const Associator& phi) const {
        const UTensor& j = J.element();
        UTensor lhs = mul(ins(j, {{1}, {2}}, 3), ins(j, {{1, 2}, {3}}, 3));
        UTensor rhs = mul(mul(ins(j, {{2}, {3}}, 3), ins(j, {{1}, {2, 3}}, 3)), phi.element());
        return lhs - rhs;
    }

    // J Delta_0(x) J^{-1} on every generator x.
    std::vector<UTensor> conjugated_coproduct(const Twist& J) const {
        std::vector<UTensor> out;
        for (int g = 0; g < H_.algebra().dim(); ++g) {
            UTensor d = H_.coproduct(Monomial{g}, 2).truncated(J.order());
            out.push_back(mul(mul(J.element(), d), J.inverse()));
        }
        return out;
    }

    // J Delta_0(x) J^{-1} - Delta_hbar(x) per generator.
    std::vector<UTensor> twist_coproduct_residual(const Twist& J, const std::vector<UTensor>& delta_hbar) const {
        if (static_cast<int>(delta_hbar.size()) != H_.algebra().dim())
            throw invalid_input("deformed coproduct must be given on every generator");
        auto conj = conjugated_coproduct(J);
        for (std::size_t g = 0; g < conj.size(); ++g) conj[g] -= delta_hbar[g];
        return conj;
    }

    // F^{12..n-1,n} ... F^{12,3} F^{1,2} for arity n.
    UTensor twist_prefactor(const UTensor& F, int n) const {
        UTensor acc = one(n, F.order());
        for (int k = 2; k <= n; ++k) {
            std::vector<int> head(k - 1);
            std::iota(head.begin(), head.end(), 1);
            acc = mul(ins(F, {head, {k}}, n), acc);
        }
        return acc;
    }

    Cochain twist_conjugate(const Cochain& x, const Twist& F) const {
        Cochain out;
        for (const auto& [n, t] : x.components()) out.add(mul(twist_prefactor(F.element(), n), t));
        return out;
    }

    Cochain twist_conjugate_inverse(const Cochain& x, const Twist& F) const {
        Cochain out;
        for (const auto& [n, t] : x.components()) out.add(mul(inverse(twist_prefactor(F.element(), n)), t));
        return out;
    }

    // m^{12,3} m^{1,2} - m^{1,23} m^{2,3} Phi.
    UTensor phi_assoc_residual(const StarProduct& m, const Associator& phi) const {
        const UTensor& t = m.element();
        UTensor lhs = mul(ins(t, {{1, 2}, {3}}, 3), ins(t, {{1}, {2}}, 3));
        UTensor rhs = mul(mul(ins(t, {{1}, {2, 3}}, 3), ins(t, {{2}, {3}}, 3)), phi.element());
        return lhs - rhs;
    }

private:
    struct Node {
        std::vector<int> leaves;
        int left = -1, right = -1;
    };

    static int join(std::vector<Node>& nodes, int a, int b) {
        Node n;
        n.leaves = nodes[a].leaves;
        n.leaves.insert(n.leaves.end(), nodes[b].leaves.begin(), nodes[b].leaves.end());
        n.left = a;
        n.right = b;
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    static int leaf(std::vector<Node>& nodes, int p) {
        nodes.push_back({{p}, -1, -1});
        return static_cast<int>(nodes.size()) - 1;
    }

    static int left_comb(std::vector<Node>& nodes, const std::vector<int>& items) {
        int acc = items.front();
        for (std::size_t k = 1; k < items.size(); ++k) acc = join(nodes, acc, items[k]);
        return acc;
    }

    // Product of (Phi^{-1})^{X,Y,W} over the rotations (X,(Y,W)) -> ((X,Y),W) taking the
    // bracketing of D o_i E to the left comb; later rotations multiply on the left.
    UTensor phi_tilde(int d, int e, int i, const UTensor& phinv) const {
        const int n = d + e - 1;
        std::vector<Node> nodes;
        std::vector<int> items;
        for (int p = 1; p <= i; ++p) items.push_back(leaf(nodes, p));
        std::vector<int> block;
        for (int p = i + 1; p <= i + e; ++p) block.push_back(leaf(nodes, p));
        items.push_back(left_comb(nodes, block));
        for (int p = i + e + 1; p <= n; ++p) items.push_back(leaf(nodes, p));
        int root = left_comb(nodes, items);

        UTensor acc = one(n, phinv.order());
        // rotate at the highest node on the left spine whose right child is internal
        while (true) {
            int parent = -1, cur = root;
            while (cur >= 0 && nodes[cur].left >= 0 && nodes[nodes[cur].right].left < 0) {
                parent = cur;
                cur = nodes[cur].left;
            }
            if (cur < 0 || nodes[cur].left < 0) break;
            const int X = nodes[cur].left, R = nodes[cur].right;
            const int Y = nodes[R].left, W = nodes[R].right;
            acc = mul(ins(phinv, {nodes[X].leaves, nodes[Y].leaves, nodes[W].leaves}, n), acc);
            const int XY = join(nodes, X, Y);
            const int top = join(nodes, XY, W);
            if (parent < 0)
                root = top;
            else
                nodes[parent].left = top;
        }
        return acc;
    }

    UTensor brace_phi_component(const UTensor& x, const UTensor& y, const UTensor& phinv) const {
        const int d = x.arity(), e = y.arity(), n = d + e - 1;
        if (n > b_.arity)
            throw bound_overflow("brace output arity " + std::to_string(n) + " exceeds bound " + std::to_string(b_.arity));
        UTensor out(n, std::min({x.order(), y.order(), phinv.order()}));
        for (int i = 0; i < d; ++i) {
            std::vector<std::vector<int>> blocks;
            for (int p = 1; p <= i; ++p) blocks.push_back({p});
            std::vector<int> b(e);
            std::iota(b.begin(), b.end(), i + 1);
            blocks.push_back(b);
            for (int p = i + e + 1; p <= n; ++p) blocks.push_back({p});
            UTensor term = mul(ins(x, blocks, n), spread({y}, {i}, n));
            term = mul(phi_tilde(d, e, i, phinv), term);
            out += (static_cast<long>(e - 1) * i) & 1 ? -term : term;
        }
        return out;
    }

    HopfModel H_;
    CochainBounds b_;
};

} // namespace qpq
