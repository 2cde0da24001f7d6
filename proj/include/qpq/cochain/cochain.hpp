#pragma once

#include "../brace/operations.hpp"
#include "../lie/lie_tensor.hpp"

#include <map>

namespace qpq {

struct CochainBounds {
    int hbar_order = default_hbar_order;
    int arity = 4;
};

// Sum of homogeneous components, one element of U^{(x)n} per arity n >= 1.
class Cochain {
public:
    Cochain() = default;
    Cochain(const UTensor& t) { add(t); }

    void add(const UTensor& t) {
        if (t.arity() < 1) throw invalid_input("cochains have arity >= 1");
        auto it = comps_.find(t.arity());
        if (it == comps_.end()) {
            if (!t.is_zero()) comps_.emplace(t.arity(), t);
            return;
        }
        it->second += t;
        if (it->second.is_zero()) comps_.erase(it);
    }

    const std::map<int, UTensor>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    int valuation() const {
        int v = INT_MAX;
        for (const auto& [n, t] : comps_) v = std::min(v, t.valuation());
        return v;
    }
    int max_arity() const { return comps_.empty() ? 0 : comps_.rbegin()->first; }

    UTensor component(int n, int order = default_hbar_order) const {
        auto it = comps_.find(n);
        return it == comps_.end() ? UTensor(n, order) : it->second;
    }

    Cochain hbar_part(int k) const {
        Cochain c;
        for (const auto& [a, t] : comps_) c.add(t.hbar_part(k));
        return c;
    }

    Cochain truncated(int n) const {
        Cochain c;
        for (const auto& [a, t] : comps_) c.add(t.truncated(n));
        return c;
    }

    Cochain& operator+=(const Cochain& o) {
        for (const auto& [a, t] : o.comps_) add(t);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        for (const auto& [a, t] : o.comps_) add(-t);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Cochain& a, const HbarSeries& s) {
        Cochain c;
        for (const auto& [n, t] : a.comps_) c.add(t * s);
        return c;
    }
    friend Cochain operator*(const Cochain& a, const Rational& s) {
        Cochain c;
        for (const auto& [n, t] : a.comps_) c.add(t * s);
        return c;
    }
    Cochain operator-() const { return *this * Rational(-1); }
    friend bool operator==(const Cochain& a, const Cochain& b) { return (a - b).is_zero(); }

private:
    std::map<int, UTensor> comps_;
};

// Unit-constant element 1 + X of U^{(x)n}; inverse by the geometric series in X.
inline UTensor series_inverse(const HopfModel& H, const UTensor& t) {
    const int n = t.arity();
    UTensor one = H.one(n, t.order());
    UTensor x = t - one;
    if (!x.is_zero() && x.valuation() < 1) throw invalid_input("element is not of the form 1 + O(hbar); not invertible");
    UTensor out = one, power = one;
    for (int k = 1; k <= t.order(); ++k) {
        power = H.multiply(power, -x);
        if (power.is_zero()) break;
        out += power;
    }
    return out;
}

// Arity-3 element 1 + hbar^2 phi_2 + ..., optionally carrying an invariance certificate.
class Associator {
public:
    static Associator trivial(const HopfModel& H, int order) { return Associator(H.one(3, order), true); }

    // Checks the constant term, the order-hbar term and invariance under the diagonal action.
    static Associator make(const HopfModel& H, const UTensor& phi) {
        check_shape(H, phi);
        const int order = phi.order();
        for (int g = 0; g < H.algebra().dim(); ++g) {
            UTensor d = H.coproduct(Monomial{g}, 3).truncated(order);
            UTensor comm = H.multiply(d, phi) - H.multiply(phi, d);
            if (!comm.is_zero())
                throw precondition_failed("associator is not invariant under " + H.algebra().name(g), to_string_tensor(H, comm));
        }
        return Associator(phi, true);
    }

    // No invariance certificate; usable for pentagon and twist residuals only.
    static Associator unchecked(const HopfModel& H, const UTensor& phi) {
        check_shape(H, phi);
        return Associator(phi, false);
    }

    const UTensor& element() const { return phi_; }
    bool certified() const { return certified_; }
    int order() const { return phi_.order(); }

    static std::string to_string_tensor(const HopfModel& H, const UTensor& t) {
        std::string s;
        for (const auto& [key, c] : t.terms()) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")";
            for (std::size_t i = 0; i < key.size(); ++i) s += (i ? " (x) " : " ") + H.uea().monomial_name(key[i]);
        }
        return s.empty() ? "0" : s;
    }

private:
    Associator(UTensor phi, bool cert) : phi_(std::move(phi)), certified_(cert) {}

    static void check_shape(const HopfModel& H, const UTensor& phi) {
        if (phi.arity() != 3) throw invalid_input("associator must have arity 3");
        UTensor x = phi - H.one(3, phi.order());
        if (!x.is_zero() && x.valuation() < 2)
            throw invalid_input("associator must be 1 (x) 1 (x) 1 + O(hbar^2)");
    }

    UTensor phi_;
    bool certified_ = false;
};

class Twist {
public:
    Twist(const HopfModel& H, UTensor J) : J_(std::move(J)) {
        if (J_.arity() != 2) throw invalid_input("twist must have arity 2");
        Jinv_ = series_inverse(H, J_);
    }
    const UTensor& element() const { return J_; }
    const UTensor& inverse() const { return Jinv_; }
    int order() const { return J_.order(); }

private:
    UTensor J_, Jinv_;
};

// m = m_0 + hbar m_1 + ... with m_0 = 1 (x) 1.
class StarProduct {
public:
    StarProduct(const HopfModel& H, UTensor m) : m_(std::move(m)) {
        if (m_.arity() != 2) throw invalid_input("star product must have arity 2");
        if (!(m_.hbar_part(0) == H.one(2, m_.order()).hbar_part(0)))
            throw invalid_input("star product must have constant term 1 (x) 1");
    }
    const UTensor& element() const { return m_; }
    int order() const { return m_.order(); }

    // Coefficient of hbar^k as a rational arity-2 tensor.
    UTensor coefficient(int k) const {
        UTensor t(2, m_.order());
        for (const auto& [key, c] : m_.terms())
            if (!is_zero(c.coeff(k))) t.add(key, c.coeff(k));
        return t;
    }

    // m_1 - m_1^{21}.
    UTensor skew_part() const {
        UTensor m1 = coefficient(1), out(2, m_.order());
        for (const auto& [key, c] : m1.terms()) {
            out.add(key, c);
            out.add({key[1], key[0]}, -c);
        }
        return out;
    }

private:
    UTensor m_;
};

// Full alternation of an exterior Lie tensor into U^{(x)k} (no 1/k! factor).
inline UTensor alt_embed(const LieTensor& t, int order = default_hbar_order) {
    const int k = t.arity();
    if (k < 0) throw invalid_input("alt_embed expects a homogeneous tensor");
    UTensor out(k, order);
    for (const auto& [w, c] : t.terms()) {
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        do {
            std::vector<int> keys;
            for (int i = 0; i < k; ++i) keys.push_back(perm[i]);
            const int sign = sorting_sign(keys, std::vector<int>(k, 1));
            std::vector<Monomial> key(k);
            for (int i = 0; i < k; ++i) key[i] = Monomial{w[perm[i]]};
            out.add(key, c * Rational(sign));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

} // namespace qpq
