#pragma once

#include "../core/partition.hpp"
#include "hopf.hpp"

#include <optional>

namespace qpq {

// delta^{(n)} = (id - eps)^{(x)n} o Delta^{(n)}; delta^{(0)} = eps.
inline UTensor delta_n(const HopfModel& H, const UTensor& a, int n) {
    if (n < 0) throw invalid_input("delta_n: negative n");
    UTensor full = H.coproduct(a, n);
    UTensor out(n, full.order());
    for (const auto& [key, c] : full.terms()) {
        bool has_unit = false;
        for (const auto& m : key) has_unit = has_unit || m.empty();
        if (!has_unit) out.add(key, c);
    }
    return out;
}

// Inclusion-exclusion form: sum over subsets S of {1..n} of (-1)^{n-|S|} Delta_S(a).
inline UTensor delta_n_inclusion_exclusion(const HopfModel& H, const UTensor& a, int n) {
    if (n < 0) throw invalid_input("delta_n: negative n");
    UTensor out(n, a.order());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(i + 1);
        const Rational sign((n - static_cast<int>(subset.size())) % 2 ? -1 : 1);
        if (subset.empty()) {
            UTensor eps = H.coproduct(a, 0);
            HbarSeries e = eps.coeff({});
            out += H.one(n, a.order()) * e * sign;
        } else {
            out += insertion(H, a, BlockPartition({subset}, n)) * sign;
        }
    }
    return out;
}

struct UPrimeVerdict {
    int passed_through = 0;             // largest n with val(delta^{(k)}(a)) >= k for all k <= n
    std::optional<int> first_failure;   // first n that fails, if any
    std::vector<int> valuations;        // valuations of delta^{(k)}(a) for k = 0..n_max (INT_MAX for zero)
};

inline UPrimeVerdict uprime_valuation(const HopfModel& H, const UTensor& a, int n_max) {
    if (a.order() < n_max) throw invalid_input("uprime_valuation: truncation order below n_max");
    UPrimeVerdict v;
    for (int n = 0; n <= n_max; ++n) {
        const int val = delta_n(H, a, n).valuation();
        v.valuations.push_back(val);
        if (n == 0) continue;
        if (val < n && !v.first_failure) v.first_failure = n;
        if (!v.first_failure) v.passed_through = n;
    }
    return v;
}

} // namespace qpq
