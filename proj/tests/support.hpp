#pragma once

#include <qpq/lie/hopf.hpp>
#include <qpq/lie/standard.hpp>

#include <ostream>
#include <random>

namespace qpq {

inline void PrintTo(const UTensor& t, std::ostream* os) {
    *os << "{";
    for (const auto& [key, c] : t.terms()) {
        *os << " (" << c.str() << ")";
        for (const auto& m : key) {
            *os << " [";
            for (int g : m) *os << g;
            *os << "]";
        }
    }
    *os << " }";
}

} // namespace qpq

namespace qpq::testing {

inline Rational random_rational(std::mt19937_64& rng, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 3);
    return rat(num(rng), den(rng));
}

inline HbarSeries random_series(std::mt19937_64& rng, int order, int max_power = -1) {
    if (max_power < 0) max_power = order;
    HbarSeries s(order);
    std::uniform_int_distribution<int> p(0, max_power);
    std::uniform_int_distribution<int> count(1, 3);
    for (int k = count(rng); k > 0; --k) s.add_term(p(rng), random_rational(rng));
    return s;
}

inline Monomial random_pbw(std::mt19937_64& rng, const Uea& U, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), gen(0, U.algebra().dim() - 1);
    Monomial m;
    for (int k = len(rng); k > 0; --k) m.push_back(gen(rng));
    std::sort(m.begin(), m.end());
    std::vector<int> dedup;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!dedup.empty() && dedup.back() == m[i] && (U.algebra().degree(m[i]) & 1)) continue;
        dedup.push_back(m[i]);
    }
    return dedup;
}

inline UTensor random_tensor(std::mt19937_64& rng, const Uea& U, int arity, int max_len, int order,
                             int terms = 3, int max_power = 0) {
    UTensor t(arity, order);
    std::uniform_int_distribution<int> count(1, terms);
    for (int k = count(rng); k > 0; --k) {
        std::vector<Monomial> key;
        for (int i = 0; i < arity; ++i) key.push_back(random_pbw(rng, U, max_len));
        t.add(key, random_series(rng, order, max_power));
    }
    return t;
}

inline std::shared_ptr<const Uea> sl2_uea(int bound = 4) { return std::make_shared<const Uea>(sl2(), bound); }

} // namespace qpq::testing
