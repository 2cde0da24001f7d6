#pragma once

#include "hbar_series.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qpq {

// Sparse element of a tensor power B^{(x)n}, keyed by one basis element per slot.
template <class B>
class TensorSum {
public:
    using Key = std::vector<B>;

    TensorSum() = default;
    explicit TensorSum(int arity, int order = default_hbar_order) : arity_(arity), order_(order) {}

    static TensorSum single(Key key, const HbarSeries& c) {
        TensorSum t(static_cast<int>(key.size()), c.order());
        t.add(std::move(key), c);
        return t;
    }

    int arity() const { return arity_; }
    int order() const { return order_; }
    const std::map<Key, HbarSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const Key& k, const HbarSeries& c) {
        if (static_cast<int>(k.size()) != arity_) throw invalid_input("tensor key arity mismatch");
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

    void add(const Key& k, const Rational& c) { add(k, HbarSeries(c, order_)); }

    HbarSeries coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? HbarSeries(order_) : it->second;
    }

    int valuation() const {
        int v = INT_MAX;
        for (const auto& [k, c] : terms_) v = std::min(v, c.valuation());
        return v;
    }

    TensorSum truncated(int n) const {
        TensorSum t(arity_, std::min(n, order_));
        for (const auto& [k, c] : terms_) t.add(k, c);
        return t;
    }

    // Coefficient of hbar^k as an hbar-free tensor.
    TensorSum hbar_part(int k) const {
        TensorSum t(arity_, order_);
        for (const auto& [key, c] : terms_) {
            Rational q = c.coeff(k);
            if (!qpq::is_zero(q)) t.add(key, HbarSeries(q, order_));
        }
        return t;
    }

    TensorSum& operator+=(const TensorSum& o) {
        check(o);
        if (o.order_ < order_) *this = truncated(o.order_);
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    TensorSum& operator-=(const TensorSum& o) {
        check(o);
        if (o.order_ < order_) *this = truncated(o.order_);
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    TensorSum& operator*=(const HbarSeries& s) {
        TensorSum t(arity_, std::min(order_, s.order()));
        for (const auto& [k, c] : terms_) t.add(k, c * s);
        return *this = std::move(t);
    }
    TensorSum& operator*=(const Rational& q) { return *this *= HbarSeries(q, order_); }

    friend TensorSum operator+(TensorSum a, const TensorSum& b) { return a += b; }
    friend TensorSum operator-(TensorSum a, const TensorSum& b) { return a -= b; }
    friend TensorSum operator*(TensorSum a, const HbarSeries& s) { return a *= s; }
    friend TensorSum operator*(const HbarSeries& s, TensorSum a) { return a *= s; }
    friend TensorSum operator*(TensorSum a, const Rational& q) { return a *= q; }
    friend TensorSum operator*(const Rational& q, TensorSum a) { return a *= q; }
    TensorSum operator-() const { return *this * Rational(-1); }

    friend bool operator==(const TensorSum& a, const TensorSum& b) {
        return a.arity_ == b.arity_ && (a - b).is_zero();
    }

private:
    void check(const TensorSum& o) const {
        if (o.arity_ != arity_) throw invalid_input("tensor arity mismatch");
    }

    int arity_ = 0;
    int order_ = default_hbar_order;
    std::map<Key, HbarSeries> terms_;
};

} // namespace qpq
