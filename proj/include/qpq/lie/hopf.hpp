#pragma once

#include "uea.hpp"

#include <optional>

namespace qpq {

// U(L) with either the primitive coproduct or a deformed coproduct given on generators
// and extended multiplicatively.
class HopfModel {
public:
    using Basis = Monomial;

    explicit HopfModel(std::shared_ptr<const Uea> U) : U_(std::move(U)), cache_(std::make_shared<Cache>()) {}

    HopfModel(std::shared_ptr<const Uea> U, std::vector<UTensor> generator_coproducts)
        : U_(std::move(U)), images_(std::move(generator_coproducts)), cache_(std::make_shared<Cache>()) {
        if (static_cast<int>(images_->size()) != U_->algebra().dim())
            throw invalid_input("deformed coproduct must be given on every generator");
        for (const auto& t : *images_)
            if (t.arity() != 2) throw invalid_input("deformed coproduct images must have arity 2");
    }

    const Uea& uea() const { return *U_; }
    std::shared_ptr<const Uea> uea_ptr() const { return U_; }
    const LieAlgebra& algebra() const { return U_->algebra(); }
    bool is_primitive() const { return !images_.has_value(); }
    bool is_even() const {
        for (const auto& g : algebra().generators())
            if (g.degree & 1) return false;
        return true;
    }

    Monomial unit() const { return {}; }
    int degree(const Monomial& m) const { return U_->degree(m); }

    UTensor multiply(const UTensor& a, const UTensor& b) const { return U_->product(a, b); }
    UTensor one(int n, int order) const { return U_->one(n, order); }

    // Iterated coproduct Delta^{(k)}; k = 0 is the counit and k = 1 the identity.
    UTensor coproduct(const Monomial& m, int k) const {
        if (k < 0) throw invalid_input("negative coproduct arity");
        {
            std::lock_guard<std::mutex> lock(cache_->mu);
            auto it = cache_->memo.find({m, k});
            if (it != cache_->memo.end()) return it->second;
        }
        UTensor out = compute(m, k);
        std::lock_guard<std::mutex> lock(cache_->mu);
        cache_->memo.emplace(std::make_pair(m, k), out);
        return out;
    }

    // Coproduct of an element of U (arity-1 tensor).
    UTensor coproduct(const UTensor& a, int k) const {
        if (a.arity() != 1) throw invalid_input("coproduct expects an arity-1 element");
        UTensor out(k, a.order());
        for (const auto& [key, c] : a.terms()) out += coproduct(key[0], k) * c;
        return out;
    }

    int coefficient_order() const {
        int n = 1 << 20;
        if (images_)
            for (const auto& t : *images_) n = std::min(n, t.order());
        return n;
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::pair<Monomial, int>, UTensor> memo;
    };

    UTensor compute(const Monomial& m, int k) const {
        const int order = coefficient_order() == (1 << 20) ? 64 : coefficient_order();
        if (k == 0) {
            UTensor t(0, order);
            if (m.empty()) t.add({}, HbarSeries(Rational(1), order));
            return t;
        }
        if (k == 1) {
            UTensor t(1, order);
            t.add({m}, HbarSeries(Rational(1), order));
            return t;
        }
        if (!images_) return primitive(m, k, order);
        if (k == 2) {
            UTensor acc = U_->one(2, order);
            for (int g : m) acc = U_->product(acc, (*images_)[g]);
            return acc;
        }
        UTensor prev = coproduct(m, k - 1);
        UTensor out(k, order);
        for (const auto& [key, c] : prev.terms()) {
            UTensor last = coproduct(key.back(), 2);
            for (const auto& [pk, pc] : last.terms()) {
                std::vector<Monomial> nk(key.begin(), key.end() - 1);
                nk.push_back(pk[0]);
                nk.push_back(pk[1]);
                out.add(nk, c * pc);
            }
        }
        return out;
    }

    // Letters of m distributed over k slots in order, with the Koszul sign.
    UTensor primitive(const Monomial& m, int k, int order) const {
        UTensor out(k, order);
        const int len = static_cast<int>(m.size());
        std::vector<int> slot(len, 0);
        std::vector<int> deg(len);
        for (int i = 0; i < len; ++i) deg[i] = algebra().degree(m[i]);
        while (true) {
            std::vector<Monomial> key(k);
            for (int i = 0; i < len; ++i) key[slot[i]].push_back(m[i]);
            const int sign = sorting_sign(slot, deg);
            out.add(key, HbarSeries(Rational(sign), order));
            int i = len - 1;
            while (i >= 0 && slot[i] == k - 1) slot[i--] = 0;
            if (i < 0) break;
            ++slot[i];
        }
        return out;
    }

    std::shared_ptr<const Uea> U_;
    std::optional<std::vector<UTensor>> images_;
    std::shared_ptr<Cache> cache_;
};

} // namespace qpq
