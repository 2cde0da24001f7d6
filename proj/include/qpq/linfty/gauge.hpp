#pragma once

#include "../core/error.hpp"
#include "../core/rational.hpp"

namespace qpq {

// A DGLA model M provides
//   using Element;  Element d(const Element&);  Element bracket(const Element&, const Element&);
//   int valuation(const Element&)  (hbar-valuation, INT_MAX for zero)
// with Element closed under +, -, * Rational.
//
// pi' = sum_k ad_g^k(pi) / k! - sum_k ad_g^k(dg) / (k+1)!
template <class M>
typename M::Element gauge_transform(const M& model, const typename M::Element& pi, const typename M::Element& g, int N) {
    using El = typename M::Element;
    if (model.valuation(g) < 1) throw invalid_input("gauge generator must have hbar-valuation >= 1");
    El out = pi;
    El term = pi;
    for (int k = 1; k <= N + 1; ++k) {
        term = model.bracket(g, term) * rat(1, k);
        if (model.valuation(term) > N) break;
        out = out + term;
    }
    term = model.d(g);
    out = out - term;
    for (int k = 1; k <= N + 1; ++k) {
        term = model.bracket(g, term) * rat(1, k + 1);
        if (model.valuation(term) > N) break;
        out = out - term;
    }
    return out;
}

} // namespace qpq
