#pragma once

#include "error.hpp"
#include "koszul.hpp"
#include "tensor_sum.hpp"

#include <set>
#include <vector>

namespace qpq {

// Ordered disjoint blocks I_1..I_m of {1..n}.
class BlockPartition {
public:
    BlockPartition(std::vector<std::vector<int>> blocks, int n) : blocks_(std::move(blocks)), n_(n) {
        if (n < 0) throw invalid_input("negative target arity");
        std::set<int> seen;
        for (const auto& b : blocks_) {
            if (b.empty()) throw invalid_input("empty block");
            for (int p : b) {
                if (p < 1 || p > n) throw invalid_input("block position out of range");
                if (!seen.insert(p).second) throw invalid_input("overlapping blocks");
            }
        }
    }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int target_arity() const { return n_; }
    int size() const { return static_cast<int>(blocks_.size()); }

private:
    std::vector<std::vector<int>> blocks_;
    int n_;
};

// a^{I_1,...,I_m}: iterated coproduct of slot k spread over the positions of I_k,
// unit in the remaining slots. The Hopf model supplies
//   Basis, unit(), degree(Basis), coproduct(Basis, k) -> TensorSum<Basis> of arity k.
template <class Hopf>
TensorSum<typename Hopf::Basis> insertion(const Hopf& hopf, const TensorSum<typename Hopf::Basis>& a,
                                          const BlockPartition& p) {
    using B = typename Hopf::Basis;
    if (a.arity() != p.size()) throw invalid_input("insertion: block count differs from tensor arity");
    const int n = p.target_arity();
    std::vector<int> positions;
    for (const auto& b : p.blocks()) positions.insert(positions.end(), b.begin(), b.end());
    const std::size_t total = positions.size();

    TensorSum<B> out(n, a.order());
    for (const auto& [slots, coeff] : a.terms()) {
        std::vector<TensorSum<B>> pieces;
        pieces.reserve(slots.size());
        for (std::size_t k = 0; k < slots.size(); ++k)
            pieces.push_back(hopf.coproduct(slots[k], static_cast<int>(p.blocks()[k].size())));

        std::vector<B> flat(total);
        auto emit = [&](const HbarSeries& c) {
            std::vector<int> deg(total);
            for (std::size_t t = 0; t < total; ++t) deg[t] = hopf.degree(flat[t]);
            int sign = sorting_sign(positions, deg);
            std::vector<B> key(n, hopf.unit());
            for (std::size_t t = 0; t < total; ++t) key[positions[t] - 1] = flat[t];
            out.add(key, sign > 0 ? c : -c);
        };
        auto rec = [&](auto&& self, std::size_t k, std::size_t offset, const HbarSeries& c) -> void {
            if (k == pieces.size()) {
                emit(c);
                return;
            }
            for (const auto& [sub, sc] : pieces[k].terms()) {
                for (std::size_t t = 0; t < sub.size(); ++t) flat[offset + t] = sub[t];
                self(self, k + 1, offset + sub.size(), c * sc);
            }
        };
        rec(rec, 0, 0, coeff);
    }
    return out;
}

} // namespace qpq
