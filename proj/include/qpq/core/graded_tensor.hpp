#pragma once

#include "hbar_series.hpp"
#include "koszul.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace qpq {

enum class Symmetry { free_tensor, symmetric, exterior };

using Word = std::vector<int>;
using DegreeTable = std::shared_ptr<const std::vector<int>>;

inline DegreeTable make_degrees(std::vector<int> d) {
    return std::make_shared<const std::vector<int>>(std::move(d));
}

// Commutation parity of a generator in the given kind. The exterior kind is
// the graded-symmetric algebra on the shifted space, so parity is degree + 1.
inline int generator_parity(Symmetry kind, int degree) {
    return kind == Symmetry::exterior ? ((degree + 1) & 1) : (degree & 1);
}

// Sorted form of a word together with the Koszul sign; sign 0 means the word vanishes.
inline std::pair<int, Word> canonical_word(const Word& w, const std::vector<int>& degrees, Symmetry kind) {
    if (kind == Symmetry::free_tensor) return {1, w};
    std::vector<int> par(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) par[i] = generator_parity(kind, degrees.at(w[i]));
    int sign = sorting_sign(w, par);
    Word s = w;
    std::stable_sort(s.begin(), s.end());
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == s[i + 1] && generator_parity(kind, degrees[s[i]]) == 1) return {0, {}};
    return {sign, s};
}

class GradedTensor {
public:
    GradedTensor() : degrees_(make_degrees({})), kind_(Symmetry::free_tensor), order_(default_hbar_order) {}
    GradedTensor(DegreeTable degrees, Symmetry kind, int order = default_hbar_order)
        : degrees_(std::move(degrees)), kind_(kind), order_(order) {}

    const DegreeTable& degree_table() const { return degrees_; }
    const std::vector<int>& degrees() const { return *degrees_; }
    Symmetry kind() const { return kind_; }
    int order() const { return order_; }
    const std::map<Word, HbarSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int word_degree(const Word& w) const {
        int d = 0;
        for (int g : w) d += degrees_->at(g);
        return d;
    }

    void add(const Word& w, const HbarSeries& c) {
        for (int g : w)
            if (g < 0 || static_cast<std::size_t>(g) >= degrees_->size())
                throw invalid_input("generator index out of range");
        auto [sign, cw] = canonical_word(w, *degrees_, kind_);
        if (sign == 0 || c.is_zero()) return;
        add_canonical(cw, sign > 0 ? c.with_order(std::min(order_, c.order())) : -c.with_order(std::min(order_, c.order())));
    }

    void add(const Word& w, const Rational& c) { add(w, HbarSeries(c, order_)); }

    GradedTensor canonicalized() const {
        GradedTensor t(degrees_, kind_, order_);
        for (const auto& [w, c] : terms_) t.add(w, c);
        return t;
    }

    HbarSeries coeff(const Word& w) const {
        auto [sign, cw] = canonical_word(w, *degrees_, kind_);
        if (sign == 0) return HbarSeries(order_);
        auto it = terms_.find(cw);
        if (it == terms_.end()) return HbarSeries(order_);
        return sign > 0 ? it->second : -it->second;
    }

    // -1 when the terms have mixed lengths, 0 for the zero tensor.
    int arity() const {
        int a = 0;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            int n = static_cast<int>(w.size());
            if (first) a = n, first = false;
            else if (a != n) return -1;
        }
        return a;
    }

    GradedTensor& operator+=(const GradedTensor& o) {
        check_compatible(o);
        for (const auto& [w, c] : o.terms_) add_canonical(w, c);
        return *this;
    }
    GradedTensor& operator-=(const GradedTensor& o) {
        check_compatible(o);
        for (const auto& [w, c] : o.terms_) add_canonical(w, -c);
        return *this;
    }
    GradedTensor& operator*=(const HbarSeries& s) {
        std::map<Word, HbarSeries> out;
        for (const auto& [w, c] : terms_) {
            HbarSeries p = c * s;
            if (!p.is_zero()) out.emplace(w, p);
        }
        terms_ = std::move(out);
        return *this;
    }
    GradedTensor& operator*=(const Rational& q) { return *this *= HbarSeries(q, order_); }

    friend GradedTensor operator+(GradedTensor a, const GradedTensor& b) { return a += b; }
    friend GradedTensor operator-(GradedTensor a, const GradedTensor& b) { return a -= b; }
    friend GradedTensor operator*(GradedTensor a, const Rational& q) { return a *= q; }
    friend GradedTensor operator*(const Rational& q, GradedTensor a) { return a *= q; }
    friend GradedTensor operator*(GradedTensor a, const HbarSeries& s) { return a *= s; }
    GradedTensor operator-() const { return *this * Rational(-1); }

    friend bool operator==(const GradedTensor& a, const GradedTensor& b) {
        return a.kind_ == b.kind_ && (a - b).is_zero();
    }

    GradedTensor empty_like() const { return GradedTensor(degrees_, kind_, order_); }

    void check_compatible(const GradedTensor& o) const {
        if (kind_ != o.kind_) throw invalid_input("mismatched symmetry kinds");
        if (degrees_ != o.degrees_ && *degrees_ != *o.degrees_) throw invalid_input("mismatched generator degrees");
    }

    void add_canonical(const Word& w, const HbarSeries& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c.with_order(std::min(order_, c.order())));
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

private:
    DegreeTable degrees_;
    Symmetry kind_;
    int order_;
    std::map<Word, HbarSeries> terms_;
};

inline GradedTensor graded_product(const GradedTensor& a, const GradedTensor& b) {
    a.check_compatible(b);
    GradedTensor out(a.degree_table(), a.kind(), std::min(a.order(), b.order()));
    for (const auto& [u, x] : a.terms())
        for (const auto& [v, y] : b.terms()) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add(w, x * y);
        }
    return out;
}

} // namespace qpq
