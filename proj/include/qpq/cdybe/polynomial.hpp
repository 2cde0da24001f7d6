#pragma once

#include "../core/error.hpp"
#include "../core/rational.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qpq {

// Polynomial in n variables over Q; exponent vectors ordered lexicographically.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    explicit Polynomial(int nvars = 1) : n_(nvars) {
        if (nvars < 0) throw invalid_input("negative variable count");
    }

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add(Exponents(nvars, 0), c);
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e.at(i) = 1;
        p.add(e, Rational(1));
        return p;
    }

    int nvars() const { return n_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }

    Rational constant_term() const {
        auto it = terms_.find(Exponents(n_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Exponents& e, const Rational& c) {
        if (static_cast<int>(e.size()) != n_) throw invalid_input("exponent vector has the wrong length");
        for (int x : e)
            if (x < 0) throw invalid_input("negative exponent");
        if (is_zero_q(c)) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (is_zero_q(it->second)) terms_.erase(it);
        }
    }

    int degree_in(int v) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
        return d;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    // Lexicographically largest term.
    const std::pair<const Exponents, Rational>& leading() const {
        if (terms_.empty()) throw invalid_input("zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    // Coefficient of v^k as a polynomial in the same variables (v absent).
    Polynomial coeff_in(int v, int k) const {
        Polynomial p(n_);
        for (const auto& [e, c] : terms_)
            if (e[v] == k) {
                Exponents f = e;
                f[v] = 0;
                p.add(f, c);
            }
        return p;
    }

    Polynomial derivative(int v) const {
        Polynomial p(n_);
        for (const auto& [e, c] : terms_)
            if (e[v] > 0) {
                Exponents f = e;
                f[v] -= 1;
                p.add(f, c * e[v]);
            }
        return p;
    }

    Polynomial times_monomial(const Exponents& m, const Rational& c) const {
        Polynomial p(n_);
        for (const auto& [e, x] : terms_) {
            Exponents f = e;
            for (int i = 0; i < n_; ++i) f[i] += m[i];
            p.add(f, x * c);
        }
        return p;
    }

    Rational evaluate(const std::vector<Rational>& at) const {
        if (static_cast<int>(at.size()) != n_) throw invalid_input("evaluation point has the wrong length");
        Rational out(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= at[i];
            out += t;
        }
        return out;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add(e, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator-() const { return times_monomial(Exponents(n_, 0), Rational(-1)); }
    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        return a.times_monomial(Exponents(a.n_, 0), c);
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial p(a.n_);
        for (const auto& [e, c] : b.terms_) p += a.times_monomial(e, c);
        return p;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!first) os << (sgn(c) < 0 ? " - " : " + ");
            else if (sgn(c) < 0) os << "-";
            first = false;
            const Rational a = abs(c);
            bool mono = false;
            for (int x : e) mono = mono || x > 0;
            if (!mono || a != 1) os << a.get_str();
            bool star = !mono || a != 1;
            for (int i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                if (star) os << "*";
                os << (i < static_cast<int>(names.size()) ? names[i] : "l" + std::to_string(i + 1));
                if (e[i] > 1) os << "^" << e[i];
                star = true;
            }
        }
        return os.str();
    }

private:
    static bool is_zero_q(const Rational& c) { return sgn(c) == 0; }
    void check(const Polynomial& o) const {
        if (n_ != o.n_) throw invalid_input("polynomials in different variable sets");
    }

    int n_;
    std::map<Exponents, Rational> terms_;
};

// Exact division; throws when b does not divide a.
inline Polynomial divide_exact(Polynomial a, const Polynomial& b) {
    if (b.is_zero()) throw invalid_input("division by the zero polynomial");
    const auto& [lb, cb] = b.leading();
    Polynomial q(a.nvars());
    while (!a.is_zero()) {
        const auto [la, ca] = a.leading();
        Polynomial::Exponents m(a.nvars());
        for (int i = 0; i < a.nvars(); ++i) {
            m[i] = la[i] - lb[i];
            if (m[i] < 0) throw invalid_input("polynomial division is not exact");
        }
        const Rational c = ca / cb;
        q.add(m, c);
        a -= b.times_monomial(m, c);
    }
    return q;
}

// Leading coefficient made 1.
inline Polynomial monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / p.leading().second);
}

inline Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

inline int main_variable(const Polynomial& a, const Polynomial& b) {
    for (int v = a.nvars() - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return -1;
}

// gcd of the coefficients in v.
inline Polynomial content_in(const Polynomial& p, int v) {
    Polynomial g(p.nvars());
    for (int k = 0; k <= p.degree_in(v); ++k) {
        Polynomial c = p.coeff_in(v, k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? monic(c) : polynomial_gcd(g, c);
        if (g.is_constant()) return Polynomial::constant(p.nvars(), Rational(1));
    }
    return g;
}

// Integer coefficients with gcd 1 and positive leading coefficient.
inline Polynomial integer_primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    mpz_class l = 1, g = 0;
    for (const auto& [e, c] : p.terms()) l = lcm(l, c.get_den());
    for (const auto& [e, c] : p.terms()) g = gcd(g, mpz_class(c.get_num() * (l / c.get_den())));
    Rational s(l, g);
    s.canonicalize();
    if (sgn(p.leading().second) < 0) s = -s;
    return p * s;
}

// lc_v(b)^k a - ... until deg_v < deg_v(b).
inline Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, int v) {
    const int db = b.degree_in(v);
    const Polynomial lb = b.coeff_in(v, db);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const int da = a.degree_in(v);
        Polynomial::Exponents shift(a.nvars(), 0);
        shift[v] = da - db;
        a = a * lb - (b * a.coeff_in(v, da)).times_monomial(shift, Rational(1));
    }
    return a;
}

} // namespace detail

// Monic gcd over Q, by primitive remainder sequences in the last variable that occurs.
inline Polynomial polynomial_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    const int v = detail::main_variable(a, b);
    if (v < 0) return Polynomial::constant(a.nvars(), Rational(1));
    const Polynomial ca = detail::content_in(a, v), cb = detail::content_in(b, v);
    const Polynomial c = polynomial_gcd(ca, cb);
    Polynomial p = detail::integer_primitive(divide_exact(a, ca)), q = detail::integer_primitive(divide_exact(b, cb));
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (!q.is_zero() && q.degree_in(v) > 0) {
        Polynomial r = detail::pseudo_remainder(p, q, v);
        p = std::move(q);
        q = r.is_zero() ? r : detail::integer_primitive(divide_exact(r, detail::content_in(r, v)));
    }
    if (!q.is_zero()) return monic(c);
    return monic(c * p);
}

// num / den with gcd removed and den monic.
class RationalFunction {
public:
    explicit RationalFunction(int nvars = 1)
        : num_(nvars), den_(Polynomial::constant(nvars, Rational(1))) {}
    RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(num_.nvars(), Rational(1))) {}
    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw invalid_input("zero denominator");
        if (num_.nvars() != den_.nvars()) throw invalid_input("numerator and denominator in different variables");
        reduce();
    }

    static RationalFunction constant(int nvars, const Rational& c) { return Polynomial::constant(nvars, c); }

    int nvars() const { return num_.nvars(); }
    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const {
        if (!is_constant()) throw invalid_input("rational function is not constant");
        return num_.constant_term() / den_.constant_term();
    }

    Rational evaluate(const std::vector<Rational>& at) const {
        const Rational d = den_.evaluate(at);
        if (sgn(d) == 0) throw invalid_input("rational function evaluated at a pole");
        return num_.evaluate(at) / d;
    }

    RationalFunction derivative(int v) const {
        return RationalFunction(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const Rational& c) {
        RationalFunction r = a;
        r.num_ = r.num_ * c;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (den_.is_constant()) return num_.str(names);
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Polynomial::constant(nvars(), Rational(1));
            return;
        }
        const Polynomial g = polynomial_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
        const Rational lc = den_.leading().second;
        num_ = num_ * (Rational(1) / lc);
        den_ = den_ * (Rational(1) / lc);
    }

    Polynomial num_, den_;
};

} // namespace qpq
