#pragma once

#include "error.hpp"

#include <vector>

namespace qpq {

// Sign of reordering factors x_1..x_k into x_{perm[0]}, ..., x_{perm[k-1]} (1-based).
inline int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    const std::size_t k = perm.size();
    if (degrees.size() != k) throw invalid_input("koszul_sign: degree list length mismatch");
    std::vector<bool> seen(k, false);
    for (int p : perm) {
        if (p < 1 || static_cast<std::size_t>(p) > k || seen[p - 1])
            throw invalid_input("koszul_sign: not a permutation");
        seen[p - 1] = true;
    }
    int parity = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (perm[i] > perm[j]) parity += (degrees[perm[i] - 1] & 1) * (degrees[perm[j] - 1] & 1);
    return (parity & 1) ? -1 : 1;
}

inline int parity_sign(long exponent) { return (exponent & 1) ? -1 : 1; }

// Sign of sorting the items by key (stable), where each item carries a parity.
template <class Key>
int sorting_sign(const std::vector<Key>& keys, const std::vector<int>& parities) {
    int parity = 0;
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (keys[j] < keys[i]) parity += (parities[i] & 1) * (parities[j] & 1);
    return (parity & 1) ? -1 : 1;
}

} // namespace qpq
