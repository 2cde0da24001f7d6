#pragma once

#include "../core/hbar_series.hpp"
#include "../core/koszul.hpp"

#include <compare>
#include <map>
#include <sstream>
#include <vector>

namespace qpq {

struct PvKey {
    std::vector<int> exps;  // monomial x^exps
    std::vector<int> slots; // strictly increasing derivative indices
    auto operator<=>(const PvKey&) const = default;
};

// Polynomial polyvector field on R^m; d/dx_i is written xi_i and treated as odd.
class PolyVector {
public:
    explicit PolyVector(int dim = 0, int order = default_hbar_order) : dim_(dim), order_(order) {}

    static PolyVector constant(int dim, const Rational& c, int order = default_hbar_order) {
        PolyVector p(dim, order);
        p.add(std::vector<int>(dim, 0), {}, HbarSeries(c, order));
        return p;
    }

    static PolyVector coordinate(int dim, int i, int order = default_hbar_order) {
        PolyVector p(dim, order);
        std::vector<int> e(dim, 0);
        e.at(i) = 1;
        p.add(e, {}, HbarSeries(Rational(1), order));
        return p;
    }

    static PolyVector partial(int dim, int i, int order = default_hbar_order) {
        PolyVector p(dim, order);
        p.add(std::vector<int>(dim, 0), {i}, HbarSeries(Rational(1), order));
        return p;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    const std::map<PvKey, HbarSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(std::vector<int> exps, std::vector<int> slots, const HbarSeries& c) {
        if (static_cast<int>(exps.size()) != dim_) throw invalid_input("exponent vector has wrong dimension");
        for (int e : exps)
            if (e < 0) throw invalid_input("negative exponent");
        for (int s : slots)
            if (s < 0 || s >= dim_) throw invalid_input("derivative index out of range");
        std::vector<int> odd(slots.size(), 1);
        int sign = sorting_sign(slots, odd);
        std::sort(slots.begin(), slots.end());
        for (std::size_t i = 0; i + 1 < slots.size(); ++i)
            if (slots[i] == slots[i + 1]) return;
        add_canonical({std::move(exps), std::move(slots)}, sign > 0 ? c : -c);
    }

    void add(std::vector<int> exps, std::vector<int> slots, const Rational& c) {
        add(std::move(exps), std::move(slots), HbarSeries(c, order_));
    }

    int arity() const {
        int a = 0;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            int n = static_cast<int>(k.slots.size());
            if (first) a = n, first = false;
            else if (a != n) return -1;
        }
        return a;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) {
            int s = 0;
            for (int e : k.exps) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    int valuation() const {
        int v = INT_MAX;
        for (const auto& [k, c] : terms_) v = std::min(v, c.valuation());
        return v;
    }

    std::map<int, PolyVector> by_arity() const {
        std::map<int, PolyVector> out;
        for (const auto& [k, c] : terms_) {
            auto it = out.try_emplace(static_cast<int>(k.slots.size()), dim_, order_).first;
            it->second.add_canonical(k, c);
        }
        return out;
    }

    PolyVector hbar_part(int k) const {
        PolyVector p(dim_, order_);
        for (const auto& [key, c] : terms_) p.add_canonical(key, HbarSeries(c.coeff(k), order_));
        return p;
    }

    PolyVector partial_x(int i) const {
        PolyVector p(dim_, order_);
        for (const auto& [k, c] : terms_) {
            if (k.exps[i] == 0) continue;
            PvKey n = k;
            n.exps[i] -= 1;
            p.add_canonical(n, c * Rational(k.exps[i]));
        }
        return p;
    }

    // Right derivative with respect to the odd variable xi_i.
    PolyVector right_partial_xi(int i) const {
        PolyVector p(dim_, order_);
        for (const auto& [k, c] : terms_) {
            auto it = std::find(k.slots.begin(), k.slots.end(), i);
            if (it == k.slots.end()) continue;
            const long after = static_cast<long>(k.slots.end() - it) - 1;
            PvKey n = k;
            n.slots.erase(n.slots.begin() + (it - k.slots.begin()));
            p.add_canonical(n, after % 2 ? -c : c);
        }
        return p;
    }

    PolyVector& operator+=(const PolyVector& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_canonical(k, c);
        return *this;
    }
    PolyVector& operator-=(const PolyVector& o) {
        check(o);
        for (const auto& [k, c] : o.terms_) add_canonical(k, -c);
        return *this;
    }
    PolyVector& operator*=(const HbarSeries& s) {
        PolyVector p(dim_, std::min(order_, s.order()));
        for (const auto& [k, c] : terms_) p.add_canonical(k, c * s);
        return *this = std::move(p);
    }
    PolyVector& operator*=(const Rational& q) { return *this *= HbarSeries(q, order_); }

    friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
    friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
    friend PolyVector operator*(PolyVector a, const Rational& q) { return a *= q; }
    friend PolyVector operator*(const Rational& q, PolyVector a) { return a *= q; }
    friend PolyVector operator*(PolyVector a, const HbarSeries& s) { return a *= s; }
    PolyVector operator-() const { return *this * Rational(-1); }
    friend bool operator==(const PolyVector& a, const PolyVector& b) { return a.dim_ == b.dim_ && (a - b).is_zero(); }

    void add_canonical(const PvKey& k, const HbarSeries& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            HbarSeries v = c.order() > order_ ? c.truncated(order_) : c;
            if (!v.is_zero()) terms_.emplace(k, std::move(v));
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (int i = 0; i < dim_; ++i)
                if (k.exps[i]) os << "*x" << i + 1 << (k.exps[i] > 1 ? "^" + std::to_string(k.exps[i]) : "");
            for (std::size_t s = 0; s < k.slots.size(); ++s) os << (s ? "^" : "*") << "d" << k.slots[s] + 1;
        }
        return os.str();
    }

private:
    void check(const PolyVector& o) const {
        if (o.dim_ != dim_) throw invalid_input("ambient dimension mismatch");
    }

    int dim_;
    int order_;
    std::map<PvKey, HbarSeries> terms_;
};

inline PolyVector wedge(const PolyVector& a, const PolyVector& b) {
    if (a.dim() != b.dim()) throw invalid_input("ambient dimension mismatch");
    PolyVector out(a.dim(), std::min(a.order(), b.order()));
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            std::vector<int> e(a.dim());
            for (int i = 0; i < a.dim(); ++i) e[i] = ka.exps[i] + kb.exps[i];
            std::vector<int> s = ka.slots;
            s.insert(s.end(), kb.slots.begin(), kb.slots.end());
            out.add(std::move(e), std::move(s), ca * cb);
        }
    return out;
}

// Schouten-Nijenhuis bracket; for vector fields it is the commutator and [X, f] = X(f).
inline PolyVector schouten_bracket(const PolyVector& P, const PolyVector& Q, int degree_cap = 64) {
    if (P.dim() != Q.dim()) throw invalid_input("ambient dimension mismatch");
    PolyVector out(P.dim(), std::min(P.order(), Q.order()));
    for (const auto& [p, Pp] : P.by_arity())
        for (const auto& [q, Qq] : Q.by_arity()) {
            const Rational s(-parity_sign(static_cast<long>(p - 1) * (q - 1)));
            for (int i = 0; i < P.dim(); ++i) {
                out += wedge(Pp.right_partial_xi(i), Qq.partial_x(i));
                out += wedge(Qq.right_partial_xi(i), Pp.partial_x(i)) * s;
            }
        }
    if (out.max_degree() > degree_cap)
        throw bound_overflow("polynomial degree " + std::to_string(out.max_degree()) + " exceeds cap " +
                             std::to_string(degree_cap));
    return out;
}

// P(df_1, ..., df_k) for an arity-k polyvector and functions f_j.
inline PolyVector evaluate_on_differentials(const PolyVector& P, const std::vector<PolyVector>& fs) {
    PolyVector out(P.dim(), P.order());
    for (const auto& [k, c] : P.terms()) {
        if (k.slots.size() != fs.size()) throw invalid_input("arity mismatch in contraction");
        std::vector<int> perm(fs.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        PolyVector coeff(P.dim(), P.order());
        coeff.add(k.exps, {}, c);
        do {
            std::vector<int> odd(perm.size(), 1);
            PolyVector term = coeff * Rational(sorting_sign(perm, odd));
            for (std::size_t j = 0; j < fs.size(); ++j) term = wedge(term, fs[j].partial_x(k.slots[perm[j]]));
            out += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

} // namespace qpq
