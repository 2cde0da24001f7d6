#include "support.hpp"

#include <qpq/poly/models.hpp>

#include <gtest/gtest.h>

using namespace qpq;

namespace {

constexpr int E = 0, F = 1, H = 2;

PolyVector random_poly(std::mt19937_64& rng, int dim, int arity, int max_deg) {
    PolyVector p(dim);
    for (int t = 0; t < 3; ++t) {
        std::vector<int> e(dim, 0);
        int deg = static_cast<int>(rng() % (max_deg + 1));
        for (int k = 0; k < deg; ++k) e[rng() % dim] += 1;
        std::vector<int> slots;
        for (int k = 0; k < arity; ++k) slots.push_back(static_cast<int>(rng() % dim));
        p.add(e, slots, qpq::testing::random_rational(rng));
    }
    return p;
}

PolyVector fn(int dim, std::vector<int> e, long c = 1) {
    PolyVector p(dim);
    p.add(std::move(e), {}, Rational(c));
    return p;
}

// Jacobiator of {f,g} = pi(df, dg) equals this multiple of [pi,pi](df,dg,dh).
const Rational kJacobiatorFactor = rat(-1, 2);

} // namespace

TEST(Schouten, FunctionsCommute) {
    EXPECT_TRUE(schouten_bracket(fn(2, {1, 0}), fn(2, {0, 2})).is_zero());
}

TEST(Schouten, VectorFieldCommutator) {
    PolyVector x1d2(2);
    x1d2.add({1, 0}, {1}, Rational(1));
    EXPECT_EQ(schouten_bracket(PolyVector::partial(2, 0), x1d2), PolyVector::partial(2, 1));
}

TEST(Schouten, VectorFieldOnFunction) {
    PolyVector f = fn(2, {2, 1});
    EXPECT_EQ(schouten_bracket(PolyVector::partial(2, 0), f), fn(2, {1, 1}, 2));
}

TEST(Schouten, ConstantBivectorIsPoisson) {
    PolyVector pi(2);
    pi.add({0, 0}, {0, 1}, Rational(1));
    EXPECT_TRUE(schouten_bracket(pi, pi).is_zero());
}

TEST(Schouten, DegreeCapIsAnError) {
    PolyVector a(1), b(1);
    a.add({3}, {0}, Rational(1));
    b.add({3}, {0}, Rational(1));
    b.add({4}, {0}, Rational(1));
    EXPECT_THROW(schouten_bracket(a, b, 4), bound_overflow);
    EXPECT_NO_THROW(schouten_bracket(a, b, 6));
}

TEST(Schouten, GradedAntisymmetryAndJacobi) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const int dim = 2 + trial % 2;
        const int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4), r = static_cast<int>(rng() % 4);
        auto P = random_poly(rng, dim, std::min(p, dim), 2), Q = random_poly(rng, dim, std::min(q, dim), 2),
             R = random_poly(rng, dim, std::min(r, dim), 2);
        const long pa = std::min(p, dim), qa = std::min(q, dim);
        EXPECT_EQ(schouten_bracket(P, Q), schouten_bracket(Q, P) * Rational(-parity_sign((pa - 1) * (qa - 1))));
        auto lhs = schouten_bracket(P, schouten_bracket(Q, R));
        auto rhs = schouten_bracket(schouten_bracket(P, Q), R) +
                   schouten_bracket(Q, schouten_bracket(P, R)) * Rational(parity_sign((pa - 1) * (qa - 1)));
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(Schouten, JacobiatorConventionIsPinned) {
    PolyVector pi(3);
    pi.add({0, 0, 0}, {0, 2}, Rational(1));
    pi.add({0, 1, 0}, {1, 2}, Rational(1));
    pi.add({1, 0, 0}, {0, 1}, Rational(1));
    auto br = [&](const PolyVector& f, const PolyVector& g) { return evaluate_on_differentials(pi, {f, g}); };
    auto f = fn(3, {1, 1, 0}), g = fn(3, {0, 1, 1}), h = fn(3, {2, 0, 1});
    auto jac = br(br(f, g), h) + br(br(g, h), f) + br(br(h, f), g);
    auto rhs = evaluate_on_differentials(schouten_bracket(pi, pi), {f, g, h});
    ASSERT_FALSE(jac.is_zero());
    EXPECT_EQ(jac, rhs * kJacobiatorFactor);
}

TEST(Schouten, JacobiatorIdentityOnRandomBivectors) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        auto pi = random_poly(rng, 3, 2, 2);
        auto br = [&](const PolyVector& f, const PolyVector& g) { return evaluate_on_differentials(pi, {f, g}); };
        auto f = random_poly(rng, 3, 0, 2), g = random_poly(rng, 3, 0, 2), h = random_poly(rng, 3, 0, 2);
        auto jac = br(br(f, g), h) + br(br(g, h), f) + br(br(h, f), g);
        EXPECT_EQ(jac, evaluate_on_differentials(schouten_bracket(pi, pi), {f, g, h}) * kJacobiatorFactor);
    }
}

TEST(GammaPush, ZeroTensor) {
    auto act = adjoint_action_model(sl2());
    EXPECT_TRUE(gamma_push(lie_tensor(sl2()), act).is_zero());
}

TEST(GammaPush, Translations) {
    auto act = translation_model(2);
    PolyVector expect(2);
    expect.add({0, 0}, {0, 1}, Rational(1));
    EXPECT_EQ(gamma_push(lie_word(act.algebra(), {0, 1}), act), expect);
}

TEST(GammaPush, ModelsAreHomomorphisms) {
    EXPECT_TRUE(homomorphism_residual(adjoint_action_model(sl2())).empty());
    EXPECT_TRUE(homomorphism_residual(matrix_right_action_model()).empty());
    EXPECT_TRUE(homomorphism_residual(translation_model(3)).empty());
    Matrix A{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    auto solv = semidirect(A);
    EXPECT_TRUE(homomorphism_residual(adjoint_action_model(solv)).empty());
}

TEST(GammaPush, NonHomomorphismRejected) {
    auto L = sl2();
    std::vector<PolyVector> fields{PolyVector::partial(2, 0), PolyVector::partial(2, 1), PolyVector(2)};
    ActionMap bad(L, fields);
    EXPECT_FALSE(homomorphism_residual(bad).empty());
    EXPECT_THROW(gamma_push(lie_word(L, {E}), bad), precondition_failed);
}

TEST(GammaPush, CommutesWithSchouten) {
    auto L = sl2();
    std::mt19937_64 rng(23);
    for (const auto& act : {adjoint_action_model(L), matrix_right_action_model()})
        for (int trial = 0; trial < 25; ++trial) {
            LieTensor a = lie_tensor(L), b = lie_tensor(L);
            const int la = 1 + static_cast<int>(rng() % 2), lb = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < 2; ++k) {
                Word u, v;
                for (int i = 0; i < la; ++i) u.push_back(static_cast<int>(rng() % 3));
                for (int i = 0; i < lb; ++i) v.push_back(static_cast<int>(rng() % 3));
                a.add(u, qpq::testing::random_rational(rng));
                b.add(v, qpq::testing::random_rational(rng));
            }
            EXPECT_EQ(gamma_push(schouten_algebraic(L, a, b), act),
                      schouten_bracket(gamma_push(a, act), gamma_push(b, act)));
        }
}

TEST(QuasiPoisson, ConstantPiTrivialAction) {
    PolyVector pi(2);
    pi.add({0, 0}, {0, 1}, Rational(1));
    auto rep = quasi_poisson_residual(pi, lie_tensor(abelian(1)), trivial_action(abelian(1), 2));
    EXPECT_TRUE(rep.quasi_poisson());
}

TEST(QuasiPoisson, PushedRMatrix) {
    auto L = sl2();
    auto r = lie_word(L, {E, F});
    auto Z = schouten_algebraic(L, r, r);
    for (const auto& act : {adjoint_action_model(L), matrix_right_action_model()}) {
        auto rep = quasi_poisson_residual(gamma_push(r, act), Z, act);
        EXPECT_TRUE(rep.residual.is_zero());
        EXPECT_EQ(schouten_bracket(gamma_push(r, act), gamma_push(r, act)), gamma_push(Z, act));
    }
}

TEST(QuasiPoisson, ConstantPiNonzeroZ) {
    auto act = translation_model(3);
    PolyVector pi(3);
    pi.add({0, 0, 0}, {0, 1}, Rational(1));
    auto Z = lie_word(act.algebra(), {0, 1, 2});
    auto rep = quasi_poisson_residual(pi, Z, act);
    EXPECT_EQ(rep.residual, -gamma_push(Z, act));
    EXPECT_TRUE(rep.invariance.empty());
}

TEST(MaurerCartan, MoyalDirection) {
    PolyVector pi(2);
    pi.add({0, 0}, {0, 1}, HbarSeries::monomial(1, 1));
    EXPECT_TRUE(mc_residual(pi, PolyVector(2)).is_zero());
}

TEST(MaurerCartan, CommutingPoissonPair) {
    PolyVector pi(3), r(3);
    pi.add({0, 0, 0}, {0, 1}, HbarSeries::monomial(1, 1));
    r.add({0, 0, 1}, {0, 1}, Rational(1));
    ASSERT_TRUE(schouten_bracket(r, pi).is_zero());
    auto res = mc_residual(pi, r);
    EXPECT_TRUE(res.hbar_part(1).is_zero());
    EXPECT_TRUE(res.hbar_part(2).is_zero());
}

TEST(MaurerCartan, FirstOrderIsBracketWithR) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_poly(rng, 3, 2, 1), q = random_poly(rng, 3, 2, 1), r = random_poly(rng, 3, 2, 1);
        PolyVector pih = p * HbarSeries::monomial(1, 1) + q * HbarSeries::monomial(1, 2);
        EXPECT_EQ(mc_residual(pih, r).hbar_part(1), schouten_bracket(r, p));
    }
    EXPECT_THROW(mc_residual(PolyVector::constant(2, 1), PolyVector(2)), invalid_input);
}

TEST(Invariance, TrivialActionAlwaysEmpty) {
    auto pi = PolyVector::partial(2, 0);
    EXPECT_TRUE(invariance_residual(pi, trivial_action(sl2(), 2)).empty());
}

TEST(Invariance, TranslationsAndConstants) {
    auto act = translation_model(2);
    PolyVector pi(2);
    pi.add({0, 0}, {0, 1}, Rational(3));
    EXPECT_TRUE(invariance_residual(pi, act).empty());
    PolyVector x1pi(2);
    x1pi.add({1, 0}, {0, 1}, Rational(1));
    auto d = invariance_residual(x1pi, act);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].i, 0);
    PolyVector expect(2);
    expect.add({0, 0}, {0, 1}, Rational(1));
    EXPECT_EQ(d[0].residual, expect);
}
