#pragma once

#include "../core/partition.hpp"
#include "../lie/hopf.hpp"

#include <vector>

namespace qpq {

enum class BraceSign {
    standard, // epsilon = sum (k_s - 1) i_s
    mutated   // epsilon = sum k_s i_s, used only to check that the axiom suite notices
};

inline void require_even(const HopfModel& H) {
    if (!H.is_even()) throw unsupported("brace operations are implemented for evenly graded Hopf models only");
}

// 1^{(x)i_1} (x) beta_1 (x) 1 ... (x) beta_n (x) 1 ... in `total` slots.
inline UTensor spread(const std::vector<UTensor>& betas, const std::vector<int>& starts, int total) {
    UTensor acc(total, 1 << 20);
    acc.add(std::vector<Monomial>(total), HbarSeries(Rational(1), 1 << 20));
    for (std::size_t s = 0; s < betas.size(); ++s) {
        UTensor next(total, std::min(acc.order(), betas[s].order()));
        for (const auto& [ka, ca] : acc.terms())
            for (const auto& [kb, cb] : betas[s].terms()) {
                std::vector<Monomial> key = ka;
                for (std::size_t t = 0; t < kb.size(); ++t) key[starts[s] + t] = kb[t];
                next.add(key, ca * cb);
            }
        acc = std::move(next);
    }
    return acc;
}

// B^{1,n}(alpha; beta_1 [x] ... [x] beta_n).
inline UTensor brace_b1n(const HopfModel& H, const UTensor& alpha, const std::vector<UTensor>& betas, int arity_bound,
                         BraceSign rule = BraceSign::standard) {
    require_even(H);
    const int k = alpha.arity();
    const int n = static_cast<int>(betas.size());
    int order = alpha.order();
    int total = k;
    for (const auto& b : betas) {
        if (b.arity() < 1) throw invalid_input("brace arguments must have arity >= 1");
        total += b.arity() - 1;
        order = std::min(order, b.order());
    }
    if (n == 0) return alpha;
    if (total > arity_bound)
        throw bound_overflow("brace output arity " + std::to_string(total) + " exceeds bound " + std::to_string(arity_bound));
    UTensor out(total, order);
    if (n > k) return out;

    // choose the alpha slots j_1 < ... < j_n that receive the betas
    std::vector<int> slots(n);
    for (int s = 0; s < n; ++s) slots[s] = s;
    while (true) {
        std::vector<std::vector<int>> blocks;
        std::vector<int> starts;
        long eps = 0;
        int pos = 0, s = 0;
        for (int j = 0; j < k; ++j) {
            if (s < n && slots[s] == j) {
                const int ks = betas[s].arity();
                std::vector<int> b;
                for (int t = 1; t <= ks; ++t) b.push_back(pos + t);
                blocks.push_back(b);
                starts.push_back(pos);
                eps += static_cast<long>(rule == BraceSign::standard ? ks - 1 : ks) * pos;
                pos += ks;
                ++s;
            } else {
                blocks.push_back({pos + 1});
                ++pos;
            }
        }
        UTensor term = H.multiply(insertion(H, alpha, BlockPartition(blocks, total)), spread(betas, starts, total));
        out += (eps & 1) ? -term : term;

        int i = n - 1;
        while (i >= 0 && slots[i] == k - n + i) --i;
        if (i < 0) break;
        ++slots[i];
        for (int t = i + 1; t < n; ++t) slots[t] = slots[t - 1] + 1;
    }
    return out;
}

inline UTensor unit_cochain(int arity, int order) {
    UTensor t(arity, order);
    t.add(std::vector<Monomial>(arity), HbarSeries(Rational(1), order));
    return t;
}

// [alpha, beta]_G = B^{1,1}(alpha, beta) - (-1)^{(|alpha|-1)(|beta|-1)} B^{1,1}(beta, alpha).
inline UTensor gerstenhaber_b11(const HopfModel& H, const UTensor& a, const UTensor& b, int arity_bound,
                                BraceSign rule = BraceSign::standard) {
    UTensor x = brace_b1n(H, a, {b}, arity_bound, rule);
    UTensor y = brace_b1n(H, b, {a}, arity_bound, rule);
    return ((static_cast<long>(a.arity() - 1) * (b.arity() - 1)) & 1) ? x + y : x - y;
}

// b_cH(alpha) = [1 (x) 1, alpha]_G.
inline UTensor cohochschild(const HopfModel& H, const UTensor& a, int arity_bound, BraceSign rule = BraceSign::standard) {
    return gerstenhaber_b11(H, unit_cochain(2, a.order()), a, arity_bound, rule);
}

} // namespace qpq
