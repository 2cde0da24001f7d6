#pragma once

#include "../poly/action.hpp"
#include "cochain.hpp"

#include <functional>

namespace qpq {

// Bilinear operation on polynomial functions with hbar-series coefficients.
using Bilinear = std::function<PolyVector(const PolyVector&, const PolyVector&)>;

inline Bilinear pointwise_product() {
    return [](const PolyVector& f, const PolyVector& g) { return wedge(f, g); };
}

// PBW monomial x_1 ... x_k acting as gamma(x_1) o ... o gamma(x_k).
inline PolyVector apply_monomial(const Monomial& m, const ActionMap& act, const PolyVector& f) {
    PolyVector out = f;
    for (auto it = m.rbegin(); it != m.rend(); ++it) out = schouten_bracket(act.field(*it), out);
    return out;
}

// Invariant-operator encoding: m in U (x) U acts on (f, g) slotwise through the action.
inline Bilinear operator_product(const UTensor& m, const ActionMap& act) {
    if (m.arity() != 2) throw invalid_input("operator_product expects an arity-2 cochain");
    if (!homomorphism_residual(act).empty()) throw precondition_failed("action map is not a homomorphism", "");
    return [m, act](const PolyVector& f, const PolyVector& g) {
        PolyVector out(f.dim(), std::min({m.order(), f.order(), g.order()}));
        for (const auto& [key, c] : m.terms())
            out += wedge(apply_monomial(key[0], act, f), apply_monomial(key[1], act, g)) * c;
        return out;
    };
}

struct MomentumDefect {
    int generator = 0;
    int sample = 0;
    PolyVector residual;  // [M(x), f]_star - hbar {mu* x, f}
};

// Strong invariance [M(x), f]_star = hbar {mu* x, f} for each generator and sample function.
inline std::vector<MomentumDefect> momentum_residual(const std::vector<PolyVector>& mu_star,
                                                     const std::vector<PolyVector>& M, const Bilinear& star,
                                                     const PolyVector& pi, const std::vector<PolyVector>& samples) {
    if (mu_star.size() != M.size()) throw invalid_input("one quantum image per momentum component required");
    std::vector<MomentumDefect> out;
    for (std::size_t x = 0; x < M.size(); ++x)
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const auto& f = samples[s];
            PolyVector comm = star(M[x], f) - star(f, M[x]);
            PolyVector pb = evaluate_on_differentials(pi, {mu_star[x], f});
            PolyVector res = comm - pb * HbarSeries::monomial(1, 1, comm.order());
            if (!res.is_zero()) out.push_back({static_cast<int>(x), static_cast<int>(s), std::move(res)});
        }
    return out;
}

inline std::vector<MomentumDefect> momentum_residual(const std::vector<PolyVector>& mu_star, const Bilinear& star,
                                                     const PolyVector& pi, const std::vector<PolyVector>& samples) {
    return momentum_residual(mu_star, mu_star, star, pi, samples);
}

// Local model C(h*) (x) C(G): coordinates lambda_1..lambda_p come first, then the G coordinates.
struct SplitModel {
    int p = 0;                           // dim h
    std::vector<PolyVector> h_fields;    // h_i acting on G-functions, one vector field per basis element
    Bilinear h_star = pointwise_product();
    std::vector<PolyVector> lambda_samples, group_samples;
    int order = default_hbar_order;
};

struct XuCondition {
    int index = 0;
    bool passed = true;
    std::vector<std::string> failures;
};

struct XuReport {
    std::vector<XuCondition> conditions;       // 1..4
    std::vector<PolyVector> extracted_r;        // f(x) * g(x) for the group samples, pairwise
    bool passed(int i) const { return conditions.at(i - 1).passed; }
};

inline PolyVector shift_formula(const SplitModel& S, const PolyVector& f, const PolyVector& g) {
    // sum_k hbar^k / k! d^k f / dlambda_{i_1..i_k} h_{i_1} ... h_{i_k} g
    PolyVector out = wedge(f, g);
    std::vector<std::pair<PolyVector, PolyVector>> layer{{f, g}};
    Rational fact(1);
    for (int k = 1; k <= S.order; ++k) {
        fact *= k;
        std::vector<std::pair<PolyVector, PolyVector>> next;
        PolyVector sum(f.dim(), S.order);
        for (const auto& [df, hg] : layer)
            for (int i = 0; i < S.p; ++i) {
                PolyVector a = df.partial_x(i);
                if (a.is_zero()) continue;
                PolyVector b = schouten_bracket(S.h_fields[i], hg);
                if (b.is_zero()) continue;
                sum += wedge(a, b);
                next.emplace_back(std::move(a), std::move(b));
            }
        out += sum * HbarSeries::monomial(Rational(1) / fact, k, S.order);
        layer = std::move(next);
        if (layer.empty()) break;
    }
    return out;
}

inline XuReport xu_conditions_check(const Bilinear& star, const SplitModel& S) {
    if (static_cast<int>(S.h_fields.size()) != S.p) throw invalid_input("one vector field per h basis element required");
    XuReport rep;
    for (int i = 1; i <= 4; ++i) rep.conditions.push_back({i, true, {}});
    auto fail = [&](int i, const std::string& what, const PolyVector& res) {
        rep.conditions[i - 1].passed = false;
        rep.conditions[i - 1].failures.push_back(what + ": " + res.str());
    };
    for (const auto& f : S.lambda_samples)
        for (const auto& g : S.lambda_samples) {
            PolyVector r = star(f, g) - S.h_star(f, g);
            if (!r.is_zero()) fail(1, f.str() + " * " + g.str(), r);
        }
    for (const auto& f : S.group_samples)
        for (const auto& g : S.lambda_samples) {
            PolyVector r = star(f, g) - wedge(f, g);
            if (!r.is_zero()) fail(2, f.str() + " * " + g.str(), r);
        }
    for (const auto& f : S.lambda_samples)
        for (const auto& g : S.group_samples) {
            PolyVector r = star(f, g) - shift_formula(S, f, g);
            if (!r.is_zero()) fail(3, f.str() + " * " + g.str(), r);
        }
    const bool ok = rep.conditions[0].passed && rep.conditions[1].passed && rep.conditions[2].passed;
    if (!ok) {
        rep.conditions[3].passed = false;
        rep.conditions[3].failures.push_back("R is not extracted while conditions 1-3 fail");
        return rep;
    }
    for (const auto& f : S.group_samples)
        for (const auto& g : S.group_samples) rep.extracted_r.push_back(star(f, g));
    return rep;
}

} // namespace qpq
