#pragma once

#include "../core/error.hpp"
#include "../core/graded_tensor.hpp"
#include "../lie/lie_algebra.hpp"

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qpq {

// Lambda A = S(A[1]) is the exterior GradedTensor over the unshifted degrees of A.
// A multilinear component Lambda^k A -> B[1] is stored on canonical words as a length-one tensor over B.
using LInftyComponent = std::map<Word, GradedTensor>;

inline int shifted_parity_of(const std::vector<int>& degrees, int g) { return (degrees.at(g) + 1) & 1; }

// Canonical words of length n over a graded basis (odd repeats excluded).
inline std::vector<Word> exterior_basis(const std::vector<int>& degrees, int n) {
    std::vector<Word> out;
    Word w;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(w.size()) == n) {
            out.push_back(w);
            return;
        }
        for (int g = start; g < static_cast<int>(degrees.size()); ++g) {
            if (!w.empty() && w.back() == g && shifted_parity_of(degrees, g) == 1) continue;
            w.push_back(g);
            rec(g);
            w.pop_back();
        }
    };
    rec(0);
    return out;
}

// Sign of moving the letters at the chosen positions of w to the front, keeping their order.
inline int extraction_sign(const Word& w, const std::vector<int>& degrees, const std::vector<bool>& chosen) {
    int parity = 0, passed = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int p = shifted_parity_of(degrees, w[i]);
        if (chosen[i]) parity += p * passed;
        else passed += p;
    }
    return (parity & 1) ? -1 : 1;
}

// Sign of rearranging w into the concatenation of the given blocks of positions.
inline int block_sign(const Word& w, const std::vector<int>& degrees, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> order;
    for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
    int parity = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j])
                parity += shifted_parity_of(degrees, w[order[i]]) * shifted_parity_of(degrees, w[order[j]]);
    return (parity & 1) ? -1 : 1;
}

// Unordered set partitions of {0..n-1}, blocks listed by their smallest element.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t b = 0; b < cur.size(); ++b) {
            cur[b].push_back(i);
            rec(i + 1);
            cur[b].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

inline Word pick(const Word& w, const std::vector<int>& positions) {
    Word out;
    for (int p : positions) out.push_back(w[p]);
    return out;
}

// A linear family of components k = 1..K on canonical words, with a fixed shifted degree shift.
class ComponentFamily {
public:
    ComponentFamily() = default;
    ComponentFamily(DegreeTable source, DegreeTable target, int bound, int shift, int order)
        : src_(std::move(source)), tgt_(std::move(target)), bound_(bound), shift_(shift), order_(order),
          maps_(bound) {
        if (bound < 1) throw invalid_input("arity bound must be at least 1");
    }

    const DegreeTable& source() const { return src_; }
    const DegreeTable& target() const { return tgt_; }
    int bound() const { return bound_; }
    int order() const { return order_; }
    const std::vector<LInftyComponent>& components() const { return maps_; }
    const LInftyComponent& component(int k) const { return maps_.at(k - 1); }

    GradedTensor source_element() const { return GradedTensor(src_, Symmetry::exterior, order_); }
    GradedTensor target_element() const { return GradedTensor(tgt_, Symmetry::exterior, order_); }

    // Stores the image of a word; a non-canonical word is reordered with its Koszul sign.
    void set(const Word& in, const GradedTensor& out) {
        const int k = static_cast<int>(in.size());
        if (k < 1 || k > bound_) throw bound_overflow("component arity " + std::to_string(k) + " exceeds bound " +
                                                      std::to_string(bound_));
        for (int g : in)
            if (g < 0 || g >= static_cast<int>(src_->size())) throw invalid_input("generator index out of range");
        auto [sign, cw] = canonical_word(in, *src_, Symmetry::exterior);
        if (sign == 0) throw invalid_input("input word vanishes in the exterior algebra");
        GradedTensor img = target_element();
        img += out;
        int want = shift_;
        for (int g : cw) want += (*src_)[g] - 1;
        for (const auto& [w, c] : img.terms()) {
            if (w.size() != 1) throw invalid_input("component images must have word length one");
            if ((*tgt_)[w[0]] - 1 != want) throw invalid_input("component image has the wrong degree");
        }
        if (sign < 0) img *= Rational(-1);
        if (img.is_zero()) maps_[k - 1].erase(cw);
        else maps_[k - 1][cw] = img;
    }

    GradedTensor apply_word(const Word& w) const {
        const int k = static_cast<int>(w.size());
        if (k < 1 || k > bound_) return target_element();
        auto [sign, cw] = canonical_word(w, *src_, Symmetry::exterior);
        if (sign == 0) return target_element();
        auto it = maps_[k - 1].find(cw);
        if (it == maps_[k - 1].end()) return target_element();
        return sign > 0 ? it->second : -it->second;
    }

    // Corestriction: sum of the components applied to every word.
    GradedTensor apply(const GradedTensor& x) const {
        GradedTensor out = target_element();
        for (const auto& [w, c] : x.terms()) {
            if (w.empty()) continue;
            const GradedTensor img = apply_word(w);
            if (!img.is_zero()) out += img * c;
        }
        return out;
    }

    // Only words of the given length.
    GradedTensor apply_at(const GradedTensor& x, int length) const {
        GradedTensor out = target_element();
        for (const auto& [w, c] : x.terms()) {
            if (static_cast<int>(w.size()) != length) continue;
            const GradedTensor img = apply_word(w);
            if (!img.is_zero()) out += img * c;
        }
        return out;
    }

    bool operator==(const ComponentFamily& o) const {
        if (bound_ != o.bound_ || *src_ != *o.src_ || *tgt_ != *o.tgt_) return false;
        for (int k = 1; k <= bound_; ++k) {
            for (const auto& [w, t] : component(k))
                if (!(o.apply_word(w) == t)) return false;
            for (const auto& [w, t] : o.component(k))
                if (!(apply_word(w) == t)) return false;
        }
        return true;
    }

private:
    DegreeTable src_, tgt_;
    int bound_ = 3;
    int shift_ = 0;
    int order_ = default_hbar_order;
    std::vector<LInftyComponent> maps_;
};

// Components d^{1,...,1}: Lambda^k A -> A[1] of degree one.
class LInftyStructure {
public:
    LInftyStructure(std::vector<int> degrees, int bound = 3, int order = default_hbar_order) {
        auto t = make_degrees(std::move(degrees));
        q_ = ComponentFamily(t, t, bound, 1, order);
    }

    int dim() const { return static_cast<int>(q_.source()->size()); }
    int bound() const { return q_.bound(); }
    int order() const { return q_.order(); }
    const DegreeTable& degree_table() const { return q_.source(); }
    const std::vector<int>& degrees() const { return *q_.source(); }
    const ComponentFamily& family() const { return q_; }

    GradedTensor element() const { return q_.source_element(); }
    GradedTensor generator(int g, const HbarSeries& c) const {
        GradedTensor t = element();
        t.add({g}, c);
        return t;
    }
    GradedTensor generator(int g) const { return generator(g, HbarSeries(Rational(1), order())); }

    void set(const Word& in, const GradedTensor& out) { q_.set(in, out); }
    GradedTensor component(const Word& w) const { return q_.apply_word(w); }

    // pr_1 of the coderivation.
    GradedTensor corestriction(const GradedTensor& x) const { return q_.apply(x); }

    // The coderivation extension: sum over subsets I of q_{|I|}(x_I) x_J with the Koszul sign.
    GradedTensor coderivation(const GradedTensor& x) const {
        GradedTensor out = element();
        for (const auto& [w, c] : x.terms()) {
            const int n = static_cast<int>(w.size());
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                const int k = __builtin_popcount(mask);
                if (k > bound()) continue;
                Word in, rest;
                std::vector<bool> chosen(n);
                for (int i = 0; i < n; ++i) {
                    chosen[i] = (mask >> i) & 1u;
                    (chosen[i] ? in : rest).push_back(w[i]);
                }
                const GradedTensor img = q_.apply_word(in);
                if (img.is_zero()) continue;
                GradedTensor tail = element();
                tail.add(rest, Rational(1));
                out += graded_product(img, tail) * (c * Rational(extraction_sign(w, degrees(), chosen)));
            }
        }
        return out;
    }

    std::vector<Word> basis(int n) const { return exterior_basis(degrees(), n); }

    bool operator==(const LInftyStructure& o) const { return q_ == o.q_; }

private:
    ComponentFamily q_;
};

// Components phi^{1,...,1}: Lambda^k A_1 -> A_2[1] of degree zero.
class LInftyMorphism {
public:
    LInftyMorphism(const DegreeTable& source, const DegreeTable& target, int bound = 3,
                   int order = default_hbar_order)
        : f_(source, target, bound, 0, order) {}
    LInftyMorphism(const LInftyStructure& source, const LInftyStructure& target)
        : LInftyMorphism(source.degree_table(), target.degree_table(), std::min(source.bound(), target.bound()),
                         std::min(source.order(), target.order())) {}

    static LInftyMorphism identity(const LInftyStructure& S) {
        LInftyMorphism phi(S, S);
        for (int g = 0; g < S.dim(); ++g) phi.set({g}, S.generator(g));
        return phi;
    }

    int bound() const { return f_.bound(); }
    int order() const { return f_.order(); }
    const ComponentFamily& family() const { return f_; }
    const std::vector<int>& source_degrees() const { return *f_.source(); }

    void set(const Word& in, const GradedTensor& out) { f_.set(in, out); }
    GradedTensor component(const Word& w) const { return f_.apply_word(w); }
    GradedTensor corestriction(const GradedTensor& x) const { return f_.apply(x); }

    // The coalgebra map: sum over set partitions of the product of phi on the blocks.
    GradedTensor extend(const GradedTensor& x) const {
        GradedTensor out = f_.target_element();
        for (const auto& [w, c] : x.terms()) {
            if (w.empty()) {
                out.add({}, c);
                continue;
            }
            for (const auto& blocks : set_partitions(static_cast<int>(w.size()))) {
                GradedTensor prod = f_.target_element();
                prod.add({}, Rational(1));
                for (const auto& b : blocks) {
                    const GradedTensor img = f_.apply_word(pick(w, b));
                    if (img.is_zero()) {
                        prod = f_.target_element();
                        break;
                    }
                    prod = graded_product(prod, img);
                }
                if (!prod.is_zero()) out += prod * (c * Rational(block_sign(w, source_degrees(), blocks)));
            }
        }
        return out;
    }

    bool operator==(const LInftyMorphism& o) const { return f_ == o.f_; }

private:
    ComponentFamily f_;
};

struct LInftyDefect {
    int arity;
    Word input;
    GradedTensor residual;
};

inline GradedTensor truncate_hbar(const GradedTensor& t, int n) {
    GradedTensor out = t.empty_like();
    for (const auto& [w, c] : t.terms()) out.add(w, c.truncated(n));
    return out;
}

// Drops residual coefficients of hbar-order above n.
inline std::vector<LInftyDefect> modulo_hbar(const std::vector<LInftyDefect>& report, int n) {
    std::vector<LInftyDefect> out;
    for (const auto& d : report) {
        GradedTensor r = truncate_hbar(d.residual, n);
        if (!r.is_zero()) out.push_back({d.arity, d.input, std::move(r)});
    }
    return out;
}

// pr_1(d o d) on every basis word of length <= K.
inline std::vector<LInftyDefect> check_structure(const LInftyStructure& S, int K = 3) {
    if (K > S.bound()) throw bound_overflow("K exceeds the structure's arity bound");
    std::vector<LInftyDefect> out;
    for (int n = 1; n <= K; ++n)
        for (const Word& w : S.basis(n)) {
            GradedTensor x = S.element();
            x.add(w, Rational(1));
            GradedTensor r = S.corestriction(S.coderivation(x));
            if (!r.is_zero()) out.push_back({n, w, std::move(r)});
        }
    return out;
}

// pr_1(phi o d_1 - d_2 o phi) on every basis word of length <= K.
inline std::vector<LInftyDefect> check_morphism(const LInftyMorphism& phi, const LInftyStructure& S1,
                                                const LInftyStructure& S2, int K = 3) {
    if (K > phi.bound() || K > S1.bound() || K > S2.bound()) throw bound_overflow("K exceeds an arity bound");
    if (phi.source_degrees() != S1.degrees()) throw invalid_input("morphism source does not match the structure");
    std::vector<LInftyDefect> out;
    for (int n = 1; n <= K; ++n)
        for (const Word& w : S1.basis(n)) {
            GradedTensor x = S1.element();
            x.add(w, Rational(1));
            GradedTensor r = phi.corestriction(S1.coderivation(x)) - S2.corestriction(phi.extend(x));
            if (!r.is_zero()) out.push_back({n, w, std::move(r)});
        }
    return out;
}

// Differential graded Lie algebra: graded structure constants and differential images of the generators.
struct Dgla {
    LieAlgebra L;
    std::vector<LieVector> d;
};

// q_1(sa) = -s(da), q_2(sa, sb) = (-1)^{|a|} s[a, b].
inline LInftyStructure dgla_structure(const Dgla& g, int bound = 3, int order = default_hbar_order) {
    const int n = g.L.dim();
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = g.L.degree(i);
    LInftyStructure S(deg, bound, order);
    auto vec = [&](const LieVector& v, const Rational& s) {
        GradedTensor t = S.element();
        for (const auto& [k, c] : v) t.add({k}, c * s);
        return t;
    };
    if (!g.d.empty()) {
        if (static_cast<int>(g.d.size()) != n) throw invalid_input("one differential image per generator required");
        for (int i = 0; i < n; ++i) S.set({i}, vec(g.d[i], Rational(-1)));
    }
    if (bound >= 2)
        for (const Word& w : S.basis(2)) S.set(w, vec(g.L.bracket(w[0], w[1]), Rational(parity_sign(deg[w[0]]))));
    return S;
}

inline bool is_dgla_shaped(const LInftyStructure& S) {
    for (int k = 3; k <= S.bound(); ++k)
        if (!S.family().component(k).empty()) return false;
    return true;
}

inline GradedTensor symmetric_power(const GradedTensor& x, int k) {
    GradedTensor out = x.empty_like();
    out.add({}, Rational(1));
    for (int i = 0; i < k; ++i) out = graded_product(out, x);
    return out;
}

inline int hbar_valuation(const GradedTensor& t) {
    int v = INT_MAX;
    for (const auto& [w, c] : t.terms()) v = std::min(v, c.valuation());
    return v;
}

// A degree-zero map between two DGLAs given by operations on an arbitrary element type, read as a
// strict L-infinity morphism: only the (1) and (1,1) intertwining slots can be nonzero.
template <class E1, class E2>
struct StrictDglaMap {
    std::function<E2(const E1&)> phi;
    std::function<E1(const E1&)> d1;
    std::function<E1(const E1&, const E1&)> bracket1;
    std::function<E2(const E2&)> d2;
    std::function<E2(const E2&, const E2&)> bracket2;
};

struct StrictDefect {
    int arity;
    std::size_t first, second;
};

template <class E1, class E2, class IsZero>
std::vector<StrictDefect> strict_morphism_defects(const StrictDglaMap<E1, E2>& m, const std::vector<E1>& samples,
                                                  IsZero is_zero_residual) {
    std::vector<StrictDefect> out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!is_zero_residual(m.phi(m.d1(samples[i])) - m.d2(m.phi(samples[i])))) out.push_back({1, i, i});
        for (std::size_t j = 0; j < samples.size(); ++j)
            if (!is_zero_residual(m.phi(m.bracket1(samples[i], samples[j])) -
                                  m.bracket2(m.phi(samples[i]), m.phi(samples[j]))))
                out.push_back({2, i, j});
    }
    return out;
}

// sum_k q_k(pi^k) / k!, pi of shifted degree zero.
inline GradedTensor mc_residual(const LInftyStructure& S, const GradedTensor& pi) {
    GradedTensor out = S.element();
    GradedTensor power = symmetric_power(pi, 0);
    Rational fact(1);
    for (int k = 1; k <= S.bound(); ++k) {
        power = graded_product(power, pi);
        fact *= k;
        out += S.corestriction(power) * (Rational(1) / fact);
    }
    return out;
}

inline void check_mc_candidate(const GradedTensor& pi, const std::vector<int>& degrees) {
    if (hbar_valuation(pi) < 1) throw invalid_input("Maurer-Cartan candidate must have hbar-valuation >= 1");
    for (const auto& [w, c] : pi.terms())
        if (w.size() != 1 || degrees.at(w[0]) != 1) throw invalid_input("Maurer-Cartan candidate must lie in degree one");
}

// sum_k phi_k(pi, ..., pi) / k!, mod hbar^{N+1}.
inline GradedTensor mc_transport(const LInftyMorphism& phi, const LInftyStructure& source, const GradedTensor& pi,
                                 int N) {
    check_mc_candidate(pi, source.degrees());
    const GradedTensor src = truncate_hbar(mc_residual(source, pi), N);
    if (!src.is_zero()) throw precondition_failed("source Maurer-Cartan residual is nonzero", "");
    GradedTensor out = phi.family().target_element();
    GradedTensor power = symmetric_power(pi, 0);
    Rational fact(1);
    for (int k = 1; k <= phi.bound(); ++k) {
        power = graded_product(power, pi);
        fact *= k;
        out += phi.corestriction(power) * (Rational(1) / fact);
    }
    return truncate_hbar(out, N);
}

} // namespace qpq
