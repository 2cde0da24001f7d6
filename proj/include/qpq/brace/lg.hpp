#pragma once

#include "../core/linear.hpp"
#include "../lie/lie_tensor.hpp"

#include <functional>
#include <map>

namespace qpq {

// Differential Lie bialgebra: bracket from L, cobracket x -> delta(x) in Lambda^2 h, differential x -> d(x) in h.
// Empty image lists stand for zero maps.
struct DiffLieBialgebra {
    LieAlgebra L;
    std::vector<LieTensor> cobracket;
    std::vector<LieTensor> differential;
};

// C(h) = S(h[-1]) with the extended bracket, the wedge product and d + delta.
class CEModel {
public:
    explicit CEModel(DiffLieBialgebra h) : h_(std::move(h)) {
        const int n = h_.L.dim();
        if (h_.cobracket.empty()) h_.cobracket.assign(n, lie_tensor(h_.L));
        if (h_.differential.empty()) h_.differential.assign(n, lie_tensor(h_.L));
        if (static_cast<int>(h_.cobracket.size()) != n || static_cast<int>(h_.differential.size()) != n)
            throw invalid_input("one cobracket and one differential image per generator required");
        for (int x = 0; x < n; ++x) {
            check_shape(h_.cobracket[x], 2, h_.L.degree(x), "cobracket");
            check_shape(h_.differential[x], 1, h_.L.degree(x) + 1, "differential");
        }
    }

    const LieAlgebra& algebra() const { return h_.L; }
    const DiffLieBialgebra& data() const { return h_; }

    LieTensor generator(int x) const { return lie_generator(h_.L, x); }
    LieTensor word(const Word& w, const Rational& c = 1) const { return lie_word(h_.L, w, c); }
    LieTensor unit() const { return word({}); }

    LieTensor bracket(const LieTensor& a, const LieTensor& b) const { return schouten_algebraic(h_.L, a, b); }
    LieTensor wedge(const LieTensor& a, const LieTensor& b) const { return graded_product(a, b); }
    LieTensor d(const LieTensor& a) const { return apply_derivation(a, h_.differential, 1); }
    LieTensor delta(const LieTensor& a) const { return apply_derivation(a, h_.cobracket, 1); }
    LieTensor total(const LieTensor& a) const { return d(a) + delta(a); }

    // Canonical words of the given length.
    std::vector<Word> basis(int length) const {
        std::vector<Word> out;
        Word w;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(w.size()) == length) {
                out.push_back(w);
                return;
            }
            for (int g = start; g < h_.L.dim(); ++g) {
                if (!w.empty() && w.back() == g && shifted_parity(h_.L, g) == 1) continue;
                w.push_back(g);
                rec(g);
                w.pop_back();
            }
        };
        rec(0);
        return out;
    }

private:
    void check_shape(const LieTensor& t, int arity, int degree, const char* what) const {
        for (const auto& [w, c] : t.terms()) {
            if (static_cast<int>(w.size()) != arity)
                throw invalid_input(std::string(what) + " image has the wrong arity");
            if (t.word_degree(w) != degree) throw invalid_input(std::string(what) + " image has the wrong degree");
        }
    }

    DiffLieBialgebra h_;
};

struct LgDefect {
    std::string condition;
    std::string where;
    LieTensor residual;
};

// Residuals of d^2, delta^2, d delta + delta d, and of d and delta being derivations of the bracket.
inline std::vector<LgDefect> lg_residuals(const CEModel& C) {
    const LieAlgebra& L = C.algebra();
    std::vector<LgDefect> out;
    auto push = [&](const std::string& c, const std::string& w, LieTensor r) {
        if (!r.is_zero()) out.push_back({c, w, std::move(r)});
    };
    for (int x = 0; x < L.dim(); ++x) {
        const LieTensor g = C.generator(x);
        push("d^2 = 0", L.name(x), C.d(C.d(g)));
        push("co-Jacobi", L.name(x), C.delta(C.delta(g)));
        push("d delta + delta d = 0", L.name(x), C.d(C.delta(g)) + C.delta(C.d(g)));
    }
    for (int x = 0; x < L.dim(); ++x)
        for (int y = 0; y < L.dim(); ++y) {
            const LieTensor a = C.generator(x), b = C.generator(y);
            const Rational s = (L.degree(x) & 1) ? -1 : 1;
            const std::string at = "[" + L.name(x) + ", " + L.name(y) + "]";
            push("d is a derivation of the bracket", at,
                 C.d(C.bracket(a, b)) - C.bracket(C.d(a), b) - C.bracket(a, C.d(b)) * s);
            push("cocycle compatibility", at,
                 C.delta(C.bracket(a, b)) - C.bracket(C.delta(a), b) - C.bracket(a, C.delta(b)) * s);
        }
    return out;
}

inline CEModel lg_functor(DiffLieBialgebra h) {
    CEModel C(std::move(h));
    auto defects = lg_residuals(C);
    if (!defects.empty())
        throw precondition_failed("not a differential Lie bialgebra: " + defects.front().condition + " fails at " +
                                      defects.front().where,
                                  lie_tensor_string(C.algebra(), defects.front().residual));
    return C;
}

// Algebra map of C(h) -> C(h') extending per-generator linear images.
inline LieTensor extend_algebra_map(const LieTensor& t, const std::vector<LieTensor>& images, const LieTensor& unit) {
    LieTensor out = unit.empty_like();
    for (const auto& [w, c] : t.terms()) {
        LieTensor acc = unit;
        for (int g : w) acc = graded_product(acc, images.at(g));
        out += acc * c;
    }
    return out;
}

// Dimensions of the cohomology of d on each word length 0..max_len (d preserves word length).
inline std::vector<int> linear_cohomology_dims(const CEModel& C, int max_len) {
    std::vector<int> out;
    for (int n = 0; n <= max_len; ++n) {
        const auto B = C.basis(n);
        RowReducer<Word> R;
        for (std::size_t i = 0; i < B.size(); ++i) {
            SparseVector<Word> v;
            const LieTensor image = C.d(C.word(B[i]));
            for (const auto& [w, c] : image.terms()) {
                if (!(c == HbarSeries(c.coeff(0), c.order()))) throw invalid_input("differential must have rational coefficients");
                v[w] = c.coeff(0);
            }
            R.insert(std::move(v), {{static_cast<int>(i), Rational(1)}});
        }
        out.push_back(static_cast<int>(B.size()) - 2 * static_cast<int>(R.rank()));
    }
    return out;
}

using TensorPair = std::map<std::pair<Word, Word>, HbarSeries>;

class CofreeColieLift {
public:
    // Cobracket on an evenly graded space, given as arity-2 exterior images u^v = u (x) v - v (x) u.
    CofreeColieLift(LieAlgebra V, std::vector<LieTensor> delta) : V_(std::move(V)), delta_(std::move(delta)) {
        for (int g = 0; g < V_.dim(); ++g)
            if (V_.degree(g) != 0) throw unsupported("cofree Lie coalgebra lift is implemented for degree-0 spaces");
        if (delta_.empty()) delta_.assign(V_.dim(), lie_tensor(V_));
        if (static_cast<int>(delta_.size()) != V_.dim()) throw invalid_input("one cobracket image per generator required");
        for (const auto& t : delta_)
            for (const auto& [w, c] : t.terms())
                if (w.size() != 2) throw invalid_input("cobracket images must have arity 2");
    }

    GradedTensor words() const { return GradedTensor(V_.degree_table(), Symmetry::free_tensor); }

    // Sum over positions of delta applied to one letter.
    GradedTensor split_once(const GradedTensor& t) const {
        GradedTensor out = words();
        for (const auto& [w, c] : t.terms())
            for (std::size_t i = 0; i < w.size(); ++i)
                for (const auto& [iw, ic] : delta_.at(w[i]).terms()) {
                    Word a(w.begin(), w.begin() + i), b = a;
                    a.insert(a.end(), {iw[0], iw[1]});
                    b.insert(b.end(), {iw[1], iw[0]});
                    a.insert(a.end(), w.begin() + i + 1, w.end());
                    b.insert(b.end(), w.begin() + i + 1, w.end());
                    out.add(a, c * ic);
                    out.add(b, -(c * ic));
                }
        return out;
    }

    // delta_bar_k: all sequences of k - 1 single-letter cobracket applications.
    GradedTensor iterate(const GradedTensor& x, int k) const {
        GradedTensor t = x;
        for (int j = 1; j < k; ++j) t = split_once(t);
        return t;
    }

    // x + sum_{k=2}^{max_len} delta_bar_k(x) / k!, x of word length one.
    GradedTensor lift(const GradedTensor& x, int max_len) const {
        for (const auto& [w, c] : x.terms())
            if (w.size() != 1) throw invalid_input("lift expects an element of word length one");
        GradedTensor out = x, t = x;
        Rational fact(1);
        for (int k = 2; k <= max_len; ++k) {
            t = split_once(t);
            if (t.is_zero()) break;
            fact *= k;
            out += t * (Rational(1) / fact);
        }
        return out;
    }

    // Reduced deconcatenation minus its flip.
    static TensorPair tensor_cobracket(const GradedTensor& t) {
        TensorPair out;
        for (const auto& [w, c] : t.terms())
            for (std::size_t i = 1; i < w.size(); ++i) {
                Word a(w.begin(), w.begin() + i), b(w.begin() + i, w.end());
                put(out, {a, b}, c);
                put(out, {b, a}, -c);
            }
        return out;
    }

    // delta_T(L x) - (L (x) L)(delta x) in total word length <= max_len.
    TensorPair residual(const GradedTensor& x, int max_len) const {
        TensorPair out = tensor_cobracket(lift(x, max_len));
        GradedTensor dx = split_once(x);
        for (const auto& [w, c] : dx.terms()) {
            GradedTensor u = words(), v = words();
            u.add({w[0]}, Rational(1));
            v.add({w[1]}, Rational(1));
            const GradedTensor lu = lift(u, max_len), lv = lift(v, max_len);
            for (const auto& [a, ca] : lu.terms())
                for (const auto& [b, cb] : lv.terms())
                    if (static_cast<int>(a.size() + b.size()) <= max_len) put(out, {a, b}, -(c * ca * cb));
        }
        std::erase_if(out, [&](const auto& kv) {
            return static_cast<int>(kv.first.first.size() + kv.first.second.size()) > max_len;
        });
        return out;
    }

private:
    static void put(TensorPair& t, std::pair<Word, Word> k, const HbarSeries& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t.try_emplace(std::move(k), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    LieAlgebra V_;
    std::vector<LieTensor> delta_;
};

} // namespace qpq
