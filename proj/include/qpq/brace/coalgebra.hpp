#pragma once

#include "operations.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <tuple>

namespace qpq {

// alpha_1 [x] ... [x] alpha_p with each alpha_i a pure tensor of H^{(x)k_i}, k_i >= 1.
using OuterWord = std::vector<std::vector<Monomial>>;

inline int letter_degree(const std::vector<Monomial>& a) { return static_cast<int>(a.size()) - 1; }

inline int word_degree(const OuterWord& w) {
    int d = 0;
    for (const auto& a : w) d += letter_degree(a);
    return d;
}

// Element of the cofree tensor coalgebra over T_+H, with an optional second parameter nu.
class BraceElement {
public:
    using Key = std::pair<int, OuterWord>;  // (power of nu, word)

    explicit BraceElement(int order = default_hbar_order) : order_(order) {}

    static BraceElement word(const OuterWord& w, const HbarSeries& c, int nu = 0) {
        BraceElement e(c.order());
        e.add(nu, w, c);
        return e;
    }
    static BraceElement unit(int order = default_hbar_order) { return word({}, HbarSeries(Rational(1), order)); }
    static BraceElement letter(const UTensor& t) {
        BraceElement e(t.order());
        for (const auto& [k, c] : t.terms()) e.add(0, {k}, c);
        return e;
    }

    int order() const { return order_; }
    const std::map<Key, HbarSeries>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(int nu, const OuterWord& w, const HbarSeries& c) {
        for (const auto& a : w)
            if (a.empty()) throw invalid_input("brace letters must have arity >= 1");
        if (c.is_zero()) return;
        Key k{nu, w};
        auto it = terms_.lower_bound(k);
        if (it == terms_.end() || it->first != k) {
            HbarSeries v = c.order() > order_ ? c.truncated(order_) : c;
            if (!v.is_zero()) terms_.emplace_hint(it, std::move(k), std::move(v));
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    int max_length() const {
        int n = 0;
        for (const auto& [k, c] : terms_) n = std::max(n, static_cast<int>(k.second.size()));
        return n;
    }

    BraceElement& operator+=(const BraceElement& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    BraceElement& operator-=(const BraceElement& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
        return *this;
    }
    friend BraceElement operator+(BraceElement a, const BraceElement& b) { return a += b; }
    friend BraceElement operator-(BraceElement a, const BraceElement& b) { return a -= b; }
    friend BraceElement operator*(const BraceElement& a, const Rational& q) {
        BraceElement out(a.order_);
        for (const auto& [k, c] : a.terms_) out.add(k.first, k.second, c * q);
        return out;
    }
    friend bool operator==(const BraceElement& a, const BraceElement& b) { return (a - b).is_zero(); }

private:
    int order_;
    std::map<Key, HbarSeries> terms_;
};

// Element of (cT) (x) (cT).
using BraceTensor2 = std::map<std::pair<BraceElement::Key, BraceElement::Key>, HbarSeries>;

// Powers of nu are scalars and are collected on the left factor.
inline void add_into(BraceTensor2& t, const BraceElement::Key& a, const BraceElement::Key& b, const HbarSeries& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t.try_emplace({{a.first + b.first, a.second}, {0, b.second}}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

inline bool is_zero(const BraceTensor2& t) { return t.empty(); }

struct BraceBounds {
    int outer = 3;  // longest word
    int arity = 4;  // largest inner arity
};

class BraceCoalgebra {
public:
    BraceCoalgebra(HopfModel H, BraceBounds b = {}, BraceSign rule = BraceSign::standard, bool suppress_braces = false)
        : H_(std::move(H)), b_(b), rule_(rule), shuffle_only_(suppress_braces) {
        require_even(H_);
    }

    const HopfModel& hopf() const { return H_; }
    const BraceBounds& bounds() const { return b_; }
    BraceSign rule() const { return rule_; }

    // B^p on cogenerators: B^1 = b_cH, B^2(alpha [x] beta) = {1 (x) 1 | alpha, beta} = (-1)^{k(l-1)} alpha (x) beta
    // for arities k, l; zero for p > 2.
    UTensor brace_b(const std::vector<UTensor>& letters) const {
        const int p = static_cast<int>(letters.size());
        if (p == 1) return cohochschild(H_, letters[0], b_.arity, rule_);
        if (p == 2) return brace_b1n(H_, unit_cochain(2, std::min(letters[0].order(), letters[1].order())), letters, b_.arity, rule_);
        return UTensor(1, default_hbar_order);
    }

    // B^{p,q} on cogenerators: identity for (1,0), (0,1); B^{1,n} per the brace sum; zero otherwise.
    std::optional<UTensor> brace_b(const std::vector<UTensor>& left, const std::vector<UTensor>& right) const {
        const int p = static_cast<int>(left.size()), q = static_cast<int>(right.size());
        if (p == 1 && q == 0) return left[0];
        if (p == 0 && q == 1) return right[0];
        if (p == 1 && q >= 1 && !shuffle_only_) return brace_b1n(H_, left[0], right, b_.arity, rule_);
        return std::nullopt;
    }

    BraceElement star(const BraceElement& x, const BraceElement& y, bool nu_weighted = false) const {
        BraceElement out(std::min(x.order(), y.order()));
        for (const auto& [kx, cx] : x.terms())
            for (const auto& [ky, cy] : y.terms()) {
                const HbarSeries c = cx * cy;
                star_words(kx.second, 0, ky.second, 0, nu_weighted, c, kx.first + ky.first, {}, out);
            }
        check_outer(out);
        return out;
    }

    BraceElement diff(const BraceElement& x, bool nu_weighted = false) const {
        BraceElement out(x.order());
        for (const auto& [k, c] : x.terms()) {
            const OuterWord& w = k.second;
            int before = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const HbarSeries s = (before & 1) ? -c : c;
                emit_replaced(out, k.first, w, i, 1, brace_b({pure(w[i], x.order())}), s);
                if (i + 1 < w.size())
                    emit_replaced(out, k.first + (nu_weighted ? 1 : 0), w, i, 2,
                                  brace_b({pure(w[i], x.order()), pure(w[i + 1], x.order())}), s);
                before += letter_degree(w[i]);
            }
        }
        return out;
    }

    // Deconcatenation.
    BraceTensor2 coproduct(const BraceElement& x) const {
        BraceTensor2 out;
        for (const auto& [k, c] : x.terms()) {
            const OuterWord& w = k.second;
            for (std::size_t i = 0; i <= w.size(); ++i)
                add_into(out, {k.first, OuterWord(w.begin(), w.begin() + i)}, {0, OuterWord(w.begin() + i, w.end())}, c);
        }
        return out;
    }

    // (a1 (x) a2) * (b1 (x) b2) = (-1)^{|a2||b1|} (a1 * b1) (x) (a2 * b2).
    BraceTensor2 star2(const BraceTensor2& x, const BraceTensor2& y) const {
        BraceTensor2 out;
        for (const auto& [kx, cx] : x)
            for (const auto& [ky, cy] : y) {
                const int sgn = (word_degree(kx.second.second) * word_degree(ky.first.second)) & 1;
                BraceElement l = star(single(kx.first), single(ky.first));
                BraceElement r = star(single(kx.second), single(ky.second));
                for (const auto& [kl, cl] : l.terms())
                    for (const auto& [kr, cr] : r.terms()) {
                        HbarSeries c = cx * cy * cl * cr;
                        add_into(out, kl, kr, sgn ? -c : c);
                    }
            }
        return out;
    }

    // (Delta (x) 1) Delta and (1 (x) Delta) Delta as word triples.
    using Triple = std::map<std::array<OuterWord, 3>, HbarSeries>;
    std::pair<Triple, Triple> iterated_coproducts(const BraceElement& x) const {
        Triple l, r;
        auto put = [](Triple& t, std::array<OuterWord, 3> k, const HbarSeries& c) {
            auto [it, fresh] = t.try_emplace(std::move(k), c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) t.erase(it);
            }
        };
        for (const auto& [kx, cx] : coproduct(x)) {
            for (const auto& [ka, ca] : coproduct(single(kx.first)))
                put(l, {ka.first.second, ka.second.second, kx.second.second}, cx * ca);
            for (const auto& [kb, cb] : coproduct(single(kx.second)))
                put(r, {kx.first.second, kb.first.second, kb.second.second}, cx * cb);
        }
        return {l, r};
    }

    // x -> nu^{-|x|} x with |x| the word length.
    static BraceElement rescale_nu(const BraceElement& x) {
        BraceElement out(x.order());
        for (const auto& [k, c] : x.terms()) out.add(k.first - static_cast<int>(k.second.size()), k.second, c);
        return out;
    }

    static BraceElement single(const BraceElement::Key& k, int order = default_hbar_order) {
        BraceElement e(order);
        e.add(k.first, k.second, HbarSeries(Rational(1), order));
        return e;
    }

private:
    static UTensor pure(const std::vector<Monomial>& k, int order) {
        UTensor t(static_cast<int>(k.size()), order);
        t.add(k, HbarSeries(Rational(1), order));
        return t;
    }

    void check_outer(const BraceElement& e) const {
        if (e.max_length() > b_.outer)
            throw bound_overflow("outer word length " + std::to_string(e.max_length()) + " exceeds bound " +
                                 std::to_string(b_.outer));
    }

    // Replace letters i..i+len-1 of w by the letter combination t.
    static void emit_replaced(BraceElement& out, int nu, const OuterWord& w, std::size_t i, std::size_t len,
                              const UTensor& t, const HbarSeries& c) {
        if (i + len > w.size()) return;
        for (const auto& [k, v] : t.terms()) {
            OuterWord nw(w.begin(), w.begin() + i);
            nw.push_back(k);
            nw.insert(nw.end(), w.begin() + i + len, w.end());
            out.add(nu, nw, c * v);
        }
    }

    // Coalgebra-map extension: pieces (empty, b_j) or (a_i, b_j..b_{j+n-1}), orders preserved.
    void star_words(const OuterWord& A, std::size_t i, const OuterWord& B, std::size_t j, bool nu_weighted,
                    const HbarSeries& c, int nu, const OuterWord& prefix, BraceElement& out) const {
        if (c.is_zero()) return;
        if (i == A.size() && j == B.size()) {
            out.add(nu, prefix, c);
            return;
        }
        int rest_a = 0;
        for (std::size_t l = i; l < A.size(); ++l) rest_a += letter_degree(A[l]);
        if (j < B.size()) {
            OuterWord next = prefix;
            next.push_back(B[j]);
            const bool neg = (letter_degree(B[j]) * rest_a) & 1;
            star_words(A, i, B, j + 1, nu_weighted, neg ? -c : c, nu, next, out);
        }
        if (i < A.size()) {
            const int after = rest_a - letter_degree(A[i]);
            for (std::size_t n = 0; j + n <= B.size() && (n == 0 || !shuffle_only_); ++n) {
                int block_deg = 0;
                for (std::size_t t = 0; t < n; ++t) block_deg += letter_degree(B[j + t]);
                const bool neg = (block_deg * after) & 1;
                const UTensor& merged = n == 0 ? pure_cached(A[i], c.order()) : b1n_cached(A[i], B, j, n, c.order());
                for (const auto& [k, v] : merged.terms()) {
                    OuterWord next = prefix;
                    next.push_back(k);
                    star_words(A, i + 1, B, j + n, nu_weighted, (neg ? -c : c) * v,
                               nu + (nu_weighted ? static_cast<int>(n) : 0), next, out);
                }
            }
        }
    }

    const UTensor& pure_cached(const std::vector<Monomial>& a, int order) const {
        auto key = std::make_tuple(order, a, OuterWord{});
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(std::move(key), pure(a, order)).first;
        return it->second;
    }

    // B^{1,n}(a; B[j..j+n-1]) on pure letters, memoized.
    const UTensor& b1n_cached(const std::vector<Monomial>& a, const OuterWord& B, std::size_t j, std::size_t n,
                              int order) const {
        auto key = std::make_tuple(order, a, OuterWord(B.begin() + j, B.begin() + j + n));
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<UTensor> block;
        for (const auto& b : std::get<2>(key)) block.push_back(pure(b, order));
        UTensor v = *brace_b({pure(a, order)}, block);
        return cache_.emplace(std::move(key), std::move(v)).first->second;
    }

    HopfModel H_;
    BraceBounds b_;
    BraceSign rule_;
    bool shuffle_only_;
    mutable std::map<std::tuple<int, std::vector<Monomial>, OuterWord>, UTensor> cache_;
};

inline std::string brace_string(const HopfModel& H, const BraceElement& x) {
    std::string s;
    for (const auto& [k, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")";
        if (k.first != 0) s += " nu^" + std::to_string(k.first);
        if (k.second.empty()) s += " []";
        for (std::size_t i = 0; i < k.second.size(); ++i) {
            s += i ? " [x] " : " ";
            for (std::size_t j = 0; j < k.second[i].size(); ++j)
                s += (j ? " (x) " : "") + H.uea().monomial_name(k.second[i][j]);
        }
    }
    return s.empty() ? "0" : s;
}

struct BraceAxiomConfig {
    int trials = 100;
    std::uint64_t seed = 1;
    int outer = 2;       // outer length of random elements
    int arity = 2;       // inner arity of random letters
    int filtration = 3;  // PBW length per slot
};

struct BraceAxiomResult {
    std::string name;
    int checked = 0;
    int failed = 0;
    std::vector<std::string> residuals;  // first few nonzero residuals
};

struct BraceAxiomReport {
    std::vector<BraceAxiomResult> axioms;
    const BraceAxiomResult& axiom(const std::string& name) const {
        for (const auto& a : axioms)
            if (a.name == name) return a;
        throw invalid_input("unknown axiom '" + name + "'");
    }
    bool passed(const std::string& name) const { return axiom(name).failed == 0; }
    bool all_passed() const {
        for (const auto& a : axioms)
            if (a.failed) return false;
        return true;
    }
};

// Homogeneous element c1 w1 + c2 w2 with |w1| = |w2|.
inline BraceElement random_brace_element(std::mt19937_64& rng, const HopfModel& H, const BraceAxiomConfig& cfg) {
    const int dim = H.algebra().dim();
    std::uniform_int_distribution<int> outer(1, cfg.outer), arity(1, cfg.arity), len(0, cfg.filtration),
        gen(0, std::max(0, dim - 1)), num(-4, 4), den(1, 3);
    auto letter = [&] {
        std::vector<Monomial> a(arity(rng));
        for (auto& m : a) {
            m.resize(dim ? len(rng) : 0);
            for (auto& g : m) g = gen(rng);
            std::sort(m.begin(), m.end());
        }
        return a;
    };
    auto word = [&] {
        OuterWord w(outer(rng));
        for (auto& a : w) a = letter();
        return w;
    };
    auto coeff = [&] {
        int n = num(rng);
        return HbarSeries(rat(n ? n : 1, den(rng)), default_hbar_order);
    };
    OuterWord w1 = word();
    BraceElement x = BraceElement::word(w1, coeff());
    for (int tries = 0; tries < 8; ++tries) {
        OuterWord w2 = word();
        if (word_degree(w2) != word_degree(w1)) continue;
        x += BraceElement::word(w2, coeff());
        break;
    }
    return x;
}

inline int homogeneous_degree(const BraceElement& x) {
    return x.is_zero() ? 0 : word_degree(x.terms().begin()->first.second);
}

// Associativity, coassociativity, (Delta, star) compatibility, d^2 = 0, d a coderivation,
// d a derivation of star, and the unit, on random homogeneous elements.
inline BraceAxiomReport bialgebra_axiom_suite(const BraceCoalgebra& B, const BraceAxiomConfig& cfg = {}) {
    std::mt19937_64 rng(cfg.seed);
    std::vector<BraceAxiomResult> res;
    for (const char* n : {"associativity", "coassociativity", "compatibility", "d_squared", "coderivation", "leibniz", "unit"})
        res.push_back({n, 0, 0, {}});
    const HopfModel& H = B.hopf();
    auto record = [&](int i, bool ok, const std::function<std::string()>& what) {
        ++res[i].checked;
        if (ok) return;
        ++res[i].failed;
        if (res[i].residuals.size() < 3) res[i].residuals.push_back(what());
    };
    auto diff2 = [](BraceTensor2 a, const BraceTensor2& b) {
        for (const auto& [k, c] : b) add_into(a, k.first, k.second, -c);
        return a;
    };
    auto size_note = [](std::size_t n) { return std::to_string(n) + " nonzero terms"; };
    for (int t = 0; t < cfg.trials; ++t) {
        const BraceElement x = random_brace_element(rng, H, cfg), y = random_brace_element(rng, H, cfg),
                           z = random_brace_element(rng, H, cfg);
        const BraceElement xy = B.star(x, y);
        const BraceElement r0 = B.star(xy, z) - B.star(x, B.star(y, z));
        record(0, r0.is_zero(), [&] { return brace_string(H, r0); });

        auto [l, r] = B.iterated_coproducts(x);
        record(1, l == r, [&] { return std::string("(Delta (x) 1) Delta != (1 (x) Delta) Delta"); });

        const BraceTensor2 r2 = diff2(B.coproduct(xy), B.star2(B.coproduct(x), B.coproduct(y)));
        record(2, r2.empty(), [&] { return size_note(r2.size()); });

        const BraceElement dx = B.diff(x);
        const BraceElement r3 = B.diff(dx);
        record(3, r3.is_zero(), [&] { return brace_string(H, r3); });

        BraceTensor2 dc;
        for (const auto& [k, c] : B.coproduct(x)) {
            const BraceElement da = B.diff(BraceCoalgebra::single(k.first)), db = B.diff(BraceCoalgebra::single(k.second));
            for (const auto& [ka, ca] : da.terms()) add_into(dc, ka, k.second, c * ca);
            const bool neg = word_degree(k.first.second) & 1;
            for (const auto& [kb, cb] : db.terms()) add_into(dc, k.first, kb, neg ? -(c * cb) : c * cb);
        }
        const BraceTensor2 r4 = diff2(B.coproduct(dx), dc);
        record(4, r4.empty(), [&] { return size_note(r4.size()); });

        const BraceElement r5 = B.diff(xy) - B.star(dx, y) -
                                B.star(x, B.diff(y)) * Rational(homogeneous_degree(x) & 1 ? -1 : 1);
        record(5, r5.is_zero(), [&] { return brace_string(H, r5); });

        const BraceElement one = BraceElement::unit();
        const BraceElement r6 = (B.star(one, x) - x) + (B.star(x, one) - x);
        record(6, r6.is_zero(), [&] { return brace_string(H, r6); });
    }
    return {res};
}

} // namespace qpq
