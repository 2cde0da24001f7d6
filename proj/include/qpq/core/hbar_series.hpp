#pragma once

#include "error.hpp"
#include "rational.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>
#include <string>

namespace qpq {

inline constexpr int default_hbar_order = 3;

// Truncated power series in hbar with exact rational coefficients.
class HbarSeries {
public:
    explicit HbarSeries(int order = default_hbar_order) : order_(order) {
        if (order < 0) throw invalid_input("negative truncation order");
    }

    HbarSeries(const Rational& c, int order) : HbarSeries(order) { add_term(0, c); }

    static HbarSeries monomial(const Rational& c, int power, int order = default_hbar_order) {
        HbarSeries s(order);
        s.add_term(power, c);
        return s;
    }

    int order() const { return order_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<int, Rational>& terms() const { return coeffs_; }

    int valuation() const { return coeffs_.empty() ? INT_MAX : coeffs_.begin()->first; }

    Rational coeff(int k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add_term(int k, const Rational& c) {
        if (k < 0) throw invalid_input("negative hbar exponent");
        if (k > order_ || qpq::is_zero(c)) return;
        auto [it, fresh] = coeffs_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (qpq::is_zero(it->second)) coeffs_.erase(it);
        }
    }

    HbarSeries truncated(int n) const {
        HbarSeries s(std::min(n, order_));
        for (const auto& [k, c] : coeffs_) s.add_term(k, c);
        return s;
    }

    HbarSeries with_order(int n) const {
        HbarSeries s(n);
        for (const auto& [k, c] : coeffs_) s.add_term(k, c);
        return s;
    }

    HbarSeries& operator+=(const HbarSeries& o) {
        if (o.order_ < order_) *this = truncated(o.order_);
        for (const auto& [k, c] : o.coeffs_) add_term(k, c);
        return *this;
    }

    HbarSeries& operator-=(const HbarSeries& o) {
        if (o.order_ < order_) *this = truncated(o.order_);
        for (const auto& [k, c] : o.coeffs_) add_term(k, -c);
        return *this;
    }

    HbarSeries& operator*=(const Rational& c) {
        if (qpq::is_zero(c)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [k, v] : coeffs_) v *= c;
        return *this;
    }

    friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
        HbarSeries s(std::min(a.order_, b.order_));
        for (const auto& [i, x] : a.coeffs_)
            for (const auto& [j, y] : b.coeffs_)
                if (i + j <= s.order_) s.add_term(i + j, x * y);
        return s;
    }

    HbarSeries& operator*=(const HbarSeries& o) { return *this = *this * o; }

    friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
    friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
    friend HbarSeries operator*(HbarSeries a, const Rational& c) { return a *= c; }
    friend HbarSeries operator*(const Rational& c, HbarSeries a) { return a *= c; }
    HbarSeries operator-() const { return *this * Rational(-1); }

    // Multiplication by hbar^k.
    HbarSeries shifted(int k) const {
        HbarSeries s(order_);
        for (const auto& [i, c] : coeffs_) s.add_term(i + k, c);
        return s;
    }

    HbarSeries inverse() const {
        Rational c0 = coeff(0);
        if (qpq::is_zero(c0)) throw invalid_input("series with zero constant term is not invertible");
        HbarSeries result(order_);
        result.add_term(0, 1 / c0);
        for (int n = 1; n <= order_; ++n) {
            Rational acc = 0;
            for (int k = 1; k <= n; ++k) acc += coeff(k) * result.coeff(n - k);
            result.add_term(n, -acc / c0);
        }
        return result;
    }

    friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
        int n = std::min(a.order_, b.order_);
        auto x = a.truncated(n), y = b.truncated(n);
        return x.coeffs_ == y.coeffs_;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : coeffs_) {
            if (!first) os << " + ";
            first = false;
            os << c.get_str();
            if (k == 1) os << "*h";
            else if (k > 1) os << "*h^" << k;
        }
        return os.str();
    }

private:
    std::map<int, Rational> coeffs_;
    int order_;
};

} // namespace qpq
