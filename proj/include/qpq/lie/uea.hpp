#pragma once

#include "../core/tensor_sum.hpp"
#include "lie_algebra.hpp"

#include <memory>
#include <mutex>
#include <sstream>

namespace qpq {

using Monomial = std::vector<int>;
using UTensor = TensorSum<Monomial>;
using MonomialCombination = std::map<Monomial, Rational>;

enum class Straightening { leftmost, rightmost };

// PBW model of the universal enveloping algebra with a filtration bound.
class Uea {
public:
    Uea(LieAlgebra L, int filtration_bound, bool truncate = false)
        : L_(std::move(L)), bound_(filtration_bound), truncate_(truncate), cache_(std::make_shared<Cache>()) {
        if (filtration_bound < 0) throw invalid_input("negative filtration bound");
    }

    const LieAlgebra& algebra() const { return L_; }
    int filtration_bound() const { return bound_; }
    bool truncating() const { return truncate_; }

    int degree(const Monomial& m) const {
        int d = 0;
        for (int g : m) d += L_.degree(g);
        return d;
    }

    bool is_pbw(const Monomial& m) const {
        for (std::size_t i = 0; i + 1 < m.size(); ++i) {
            if (m[i] > m[i + 1]) return false;
            if (m[i] == m[i + 1] && (L_.degree(m[i]) & 1)) return false;
        }
        return true;
    }

    std::string monomial_name(const Monomial& m) const {
        if (m.empty()) return "1";
        std::ostringstream os;
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "*" : "") << L_.name(m[i]);
        return os.str();
    }

    // Rewrites an arbitrary word in the generators into PBW monomials.
    MonomialCombination normal_form(const Monomial& word, Straightening s = Straightening::leftmost) const {
        auto& memo = s == Straightening::leftmost ? cache_->left : cache_->right;
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = memo.find(word);
            if (it != memo.end()) return it->second;
        }
        MonomialCombination out = straighten(word, s);
        std::lock_guard<std::mutex> lock(cache_->mu);
        memo.emplace(word, out);
        return out;
    }

    MonomialCombination multiply(const Monomial& a, const Monomial& b) const {
        Monomial w = a;
        w.insert(w.end(), b.begin(), b.end());
        MonomialCombination nf = normal_form(w);
        for (auto it = nf.begin(); it != nf.end();) {
            if (static_cast<int>(it->first.size()) > bound_) {
                if (!truncate_)
                    throw bound_overflow("filtration overflow: monomial " + monomial_name(it->first) + " exceeds bound " +
                                         std::to_string(bound_));
                it = nf.erase(it);
            } else {
                ++it;
            }
        }
        return nf;
    }

    // Slotwise product in U^{(x)n} with the Koszul sign of the interchange.
    UTensor product(const UTensor& a, const UTensor& b) const {
        if (a.arity() != b.arity()) throw invalid_input("tensor arity mismatch in product");
        const int n = a.arity();
        UTensor out(n, std::min(a.order(), b.order()));
        for (const auto& [ka, ca] : a.terms())
            for (const auto& [kb, cb] : b.terms()) {
                long ex = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < i; ++j) ex += static_cast<long>(degree(ka[i])) * degree(kb[j]);
                HbarSeries c = ca * cb;
                if (ex & 1) c = -c;
                if (c.is_zero()) continue;
                std::vector<MonomialCombination> slots(n);
                bool zero = false;
                for (int i = 0; i < n && !zero; ++i) {
                    slots[i] = multiply(ka[i], kb[i]);
                    zero = slots[i].empty();
                }
                if (zero) continue;
                Monomial empty;
                std::vector<Monomial> key(n);
                auto rec = [&](auto&& self, int i, const Rational& q) -> void {
                    if (i == n) {
                        out.add(key, c * q);
                        return;
                    }
                    for (const auto& [m, v] : slots[i]) {
                        key[i] = m;
                        self(self, i + 1, q * v);
                    }
                };
                rec(rec, 0, Rational(1));
            }
        return out;
    }

    UTensor one(int n, int order = default_hbar_order) const {
        UTensor t(n, order);
        t.add(std::vector<Monomial>(n), HbarSeries(Rational(1), order));
        return t;
    }

    UTensor element(const Monomial& m, const HbarSeries& c) const {
        if (!is_pbw(m)) throw invalid_input("monomial is not PBW ordered");
        UTensor t(1, c.order());
        t.add({m}, c);
        return t;
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<Monomial, MonomialCombination> left, right;
    };

    MonomialCombination straighten(const Monomial& w, Straightening s) const {
        const int n = static_cast<int>(w.size());
        int pos = -1;
        auto bad = [&](int i) { return w[i] > w[i + 1] || (w[i] == w[i + 1] && (L_.degree(w[i]) & 1)); };
        if (s == Straightening::leftmost) {
            for (int i = 0; i + 1 < n && pos < 0; ++i)
                if (bad(i)) pos = i;
        } else {
            for (int i = n - 2; i >= 0 && pos < 0; --i)
                if (bad(i)) pos = i;
        }
        if (pos < 0) return {{w, Rational(1)}};
        MonomialCombination out;
        auto accumulate = [&](const MonomialCombination& part, const Rational& f) {
            for (const auto& [m, v] : part) {
                Rational t = out[m] + f * v;
                if (is_zero(t)) out.erase(m);
                else out[m] = t;
            }
        };
        const int y = w[pos], x = w[pos + 1];
        auto replaced = [&](int c) {
            Monomial r(w.begin(), w.begin() + pos);
            r.push_back(c);
            r.insert(r.end(), w.begin() + pos + 2, w.end());
            return r;
        };
        if (y == x) {
            // x x = 1/2 [x, x] for odd x
            for (const auto& [c, v] : L_.bracket(x, x)) accumulate(normal_form(replaced(c), s), v / 2);
            return out;
        }
        Monomial swapped = w;
        std::swap(swapped[pos], swapped[pos + 1]);
        accumulate(normal_form(swapped, s), Rational(parity_sign(static_cast<long>(L_.degree(x)) * L_.degree(y))));
        for (const auto& [c, v] : L_.bracket(y, x)) accumulate(normal_form(replaced(c), s), v);
        return out;
    }

    LieAlgebra L_;
    int bound_;
    bool truncate_;
    std::shared_ptr<Cache> cache_;
};

} // namespace qpq
