// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failing criteria.

#include <qpq/brace/coalgebra.hpp>
#include <qpq/io/cli.hpp>
#include <qpq/lie/drinfeld.hpp>
#include <qpq/lie/standard.hpp>
#include <qpq/poly/models.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace qpq;
using namespace qpq::io;

namespace {

// Runtime ceilings in seconds; 0 means no limit.
constexpr double kLimitKernel = 1.0;
constexpr double kLimitQuasiPoisson = 5.0;
constexpr double kLimitBrace = 60.0;
constexpr double kLimitStar = 30.0;
constexpr double kLimitCdybe = 5.0;

// Trial counts and truncation orders.
constexpr int kPerturbations = 20;
constexpr int kBraceTrials = 100;
constexpr int kNuElements = 50;
constexpr int kNuOrder = 3;
constexpr int kBracketPairs = 100;
constexpr int kJacobiTriples = 30;
constexpr int kTwistPairs = 50;
constexpr int kInverseElements = 50;
constexpr int kDglas = 10;
constexpr int kMutations = 10;
constexpr int kDeformPairs = 50;
constexpr int kDeltaElements = 100;

constexpr int E = 0, F = 1, H = 2;

json load(const std::string& name) {
    std::ifstream in(std::string(QPQ_DATA_DIR) + "/" + name);
    if (!in) throw invalid_input("missing data file " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

LieAlgebra bundled_sl2() { return lie_algebra_from(Node(load("sl2.json"))["lie_algebra"]); }

// e^f from the bundled twist file.
LieTensor bundled_r(const LieAlgebra& L, int order) {
    return lie_tensor_from(Node(load("twist_sl2.json"))["twist"]["r"], L, order);
}

struct Verdict {
    bool passed = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        passed = passed && ok;
        notes.push_back((ok ? "ok " : "FAILED ") + what);
    }
};

// Brute-force Jacobiator over all triples of basis vectors.
bool jacobi_oracle(const LieAlgebra& L) {
    auto g = [](int a) { return LieVector{{a, Rational(1)}}; };
    for (int i = 0; i < L.dim(); ++i)
        for (int j = 0; j < L.dim(); ++j)
            for (int k = 0; k < L.dim(); ++k) {
                LieVector r;
                add_into(r, 1, L.bracket(g(i), L.bracket(g(j), g(k))));
                add_into(r, 1, L.bracket(g(j), L.bracket(g(k), g(i))));
                add_into(r, 1, L.bracket(g(k), L.bracket(g(i), g(j))));
                if (!r.empty()) return false;
            }
    return true;
}

Rational small(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    return rat(num(rng), den(rng));
}

LieAlgebra random_solvable4(std::mt19937_64& rng) {
    Matrix A(3, std::vector<Rational>(3));
    for (auto& row : A)
        for (auto& c : row) c = small(rng);
    Matrix P(4, std::vector<Rational>(4));
    do {
        for (auto& row : P)
            for (auto& c : row) c = small(rng);
    } while (!inverse(P));
    return change_basis(semidirect(A), P);
}

// Perturbs one structure constant until the brute-force oracle reports a broken Jacobi identity.
LieAlgebra perturbed(std::mt19937_64& rng, const LieAlgebra& L) {
    std::uniform_int_distribution<int> gen(0, L.dim() - 1);
    for (;;) {
        const int i = gen(rng), j = gen(rng), k = gen(rng);
        const Rational d = small(rng);
        if (i == j || is_zero(d)) continue;
        LieAlgebra M = L;
        LieVector v = M.bracket(i, j);
        add_into(v, d, {{k, Rational(1)}});
        M.set_bracket(i, j, v);
        if (!jacobi_oracle(M)) return M;
    }
}

Verdict kernel() {
    Verdict v;
    std::mt19937_64 rng(101);
    const LieAlgebra g = bundled_sl2();
    const LieAlgebra s = random_solvable4(rng);
    v.require(jacobi_oracle(s), "random 4-dimensional algebra is a Lie algebra (oracle)");
    v.require(check_jacobi(g).empty(), "check_jacobi(sl2) passes");
    v.require(check_jacobi(s).empty(), "check_jacobi(solvable4) passes");
    int flagged = 0;
    for (int t = 0; t < kPerturbations; ++t)
        flagged += !check_jacobi(perturbed(rng, t % 2 ? s : g)).empty();
    v.require(flagged == kPerturbations, std::to_string(flagged) + "/" + std::to_string(kPerturbations) + " perturbations flagged");
    return v;
}

Verdict quasi_poisson() {
    Verdict v;
    const LieAlgebra L = bundled_sl2();
    const LieTensor r = bundled_r(L, 0);
    const LieTensor Z = schouten_algebraic(L, r, r);
    LieTensor bent = r;
    bent.add({E, F}, Rational(1));
    for (const auto& [name, act] : {std::pair{"R^3 adjoint", adjoint_action_model(L)},
                                    std::pair{"2x2 matrices", matrix_right_action_model()}}) {
        const PolyVector pi = gamma_push(r, act);
        v.require(quasi_poisson_residual(pi, Z, act).residual.is_zero(), std::string(name) + ": residual vanishes");
        v.require(!quasi_poisson_residual(gamma_push(bent, act), Z, act).residual.is_zero(),
                  std::string(name) + ": perturbed r breaks it");
        v.require(gamma_push(Z, act) == schouten_bracket(pi, pi), std::string(name) + ": gamma[r,r] = [gamma r, gamma r]");
    }
    return v;
}

struct Calc {
    std::shared_ptr<const Uea> U;
    CochainCalculus C;
    explicit Calc(LieAlgebra L, int bound = 10)
        : U(std::make_shared<const Uea>(std::move(L), bound)), C(HopfModel(U)) {}
};

UTensor random_tensor(std::mt19937_64& rng, const Uea& U, int arity, int max_len, int order, int max_power = 0) {
    std::uniform_int_distribution<int> len(0, max_len), gen(0, U.algebra().dim() - 1), count(1, 3), pw(0, max_power);
    UTensor t(arity, order);
    for (int n = count(rng); n > 0; --n) {
        std::vector<Monomial> key;
        for (int i = 0; i < arity; ++i) {
            Monomial m;
            for (int k = len(rng); k > 0; --k) m.push_back(gen(rng));
            std::sort(m.begin(), m.end());
            key.push_back(m);
        }
        t.add(key, HbarSeries::monomial(small(rng), pw(rng), order));
    }
    return t;
}

Verdict brace() {
    Verdict v;
    auto U = std::make_shared<const Uea>(bundled_sl2(), 12);
    const BraceAxiomConfig cfg{kBraceTrials, 7, 2, 2, 3};
    const auto start = std::chrono::steady_clock::now();
    const auto rep = bialgebra_axiom_suite(BraceCoalgebra(HopfModel(U), {8, 8}), cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& a : rep.axioms)
        v.require(a.failed == 0 && a.checked == kBraceTrials,
                  a.name + " " + std::to_string(a.checked - a.failed) + "/" + std::to_string(a.checked));
    char buf[64];
    std::snprintf(buf, sizeof buf, "axiom suite ran in %.2f s (limit %.0f s)", secs, kLimitBrace);
    v.require(secs < kLimitBrace, buf);
    const auto mut = bialgebra_axiom_suite(BraceCoalgebra(HopfModel(U), {8, 8}, BraceSign::mutated), cfg);
    std::string broken;
    for (const auto& a : mut.axioms)
        if (a.failed) broken += (broken.empty() ? "" : ",") + a.name;
    v.require(!mut.passed("compatibility"), "epsilon mutation fails compatibility (mutation breaks: " + broken + ")");
    return v;
}

BraceTensor2 rescale2(const BraceTensor2& t) {
    BraceTensor2 out;
    for (const auto& [k, c] : t)
        add_into(out, {k.first.first - static_cast<int>(k.first.second.size()), k.first.second},
                 {k.second.first - static_cast<int>(k.second.second.size()), k.second.second}, c);
    return out;
}

Verdict intertwining() {
    Verdict v;
    auto U = std::make_shared<const Uea>(bundled_sl2(), 12);
    const BraceCoalgebra B(HopfModel(U), {8, 8});
    const auto I = BraceCoalgebra::rescale_nu;
    std::mt19937_64 rng(104);
    // Words of outer length <= 3 for d and the coproduct; products of lengths 2 and 1.
    const BraceAxiomConfig three{1, 0, kNuOrder, 2, 2}, two{1, 0, kNuOrder - 1, 2, 2}, one{1, 0, 1, 2, 2};
    int star = 0, diff = 0, cop = 0;
    for (int t = 0; t < kNuElements; ++t) {
        const BraceElement x = random_brace_element(rng, B.hopf(), three);
        const BraceElement a = random_brace_element(rng, B.hopf(), two), b = random_brace_element(rng, B.hopf(), one);
        star += I(B.star(a, b)) == B.star(I(a), I(b), true);
        diff += I(B.diff(x)) == B.diff(I(x), true);
        cop += B.coproduct(I(x)) == rescale2(B.coproduct(x));
    }
    const auto n = std::to_string(kNuElements);
    v.require(star == kNuElements, "star square " + std::to_string(star) + "/" + n);
    v.require(diff == kNuElements, "d square " + std::to_string(diff) + "/" + n);
    v.require(cop == kNuElements, "coproduct square " + std::to_string(cop) + "/" + n);
    return v;
}

Associator bundled_phi(const CochainCalculus& C, int N, LieTensor* z_out = nullptr) {
    const json doc = load("phi_sl2.json");
    const Node a = Node(doc)["associator"];
    const LieTensor Z = lie_tensor_from(a["z"], C.hopf().algebra(), N);
    if (z_out) *z_out = Z;
    return Associator::make(C.hopf(), C.one(3, N) + alt_embed(Z, N) * HbarSeries::monomial(rational_from(a["scale"]), 2, N));
}

Verdict deformed_bracket() {
    Verdict v;
    const int N = 2;
    Calc K(bundled_sl2());
    const auto& C = K.C;
    std::mt19937_64 rng(105);
    const auto one = Associator::trivial(C.hopf(), N);
    int agree = 0;
    for (int t = 0; t < kBracketPairs; ++t) {
        const int d = 1 + t % 3, e = 1 + (t / 3) % 2;
        const auto a = random_tensor(rng, *K.U, d, 2, N, N), b = random_tensor(rng, *K.U, e, 2, N, N);
        agree += C.bracket_phi(a, b, one) == C.gerstenhaber(a, b);
    }
    v.require(agree == kBracketPairs, "bracket at Phi = 1 equals Gerstenhaber on " + std::to_string(agree) + "/" +
                                          std::to_string(kBracketPairs) + " pairs");

    LieTensor Z = lie_tensor(C.hopf().algebra(), N);
    const Associator phi = bundled_phi(C, N, &Z);
    const LieTensor r = bundled_r(C.hopf().algebra(), N);
    v.require(Z == schouten_algebraic(C.hopf().algebra(), r, r), "bundled Z equals [r, r]");
    v.require(adjoint_invariance(C.hopf().algebra(), Z).empty(), "Z is ad-invariant");
    const UTensor phinv = C.one(3, N) - alt_embed(Z, N) * HbarSeries::monomial(rational_from(Node(load("phi_sl2.json"))["associator"]["scale"]), 2, N);
    int special = 0;
    for (int t = 0; t < 20; ++t) {
        const auto A = random_tensor(rng, *K.U, 2, 2, N), B = random_tensor(rng, *K.U, 2, 2, N);
        const UTensor lhs = C.mul(C.ins(A, {{1, 2}, {3}}, 3), C.ins(B, {{1}, {2}}, 3));
        const UTensor rhs = C.mul(phinv, C.mul(C.ins(A, {{1}, {2, 3}}, 3), C.ins(B, {{2}, {3}}, 3)));
        special += C.brace_phi(A, B, phi) == Cochain(lhs - rhs);
    }
    v.require(special == 20, "arity-2 special case " + std::to_string(special) + "/20");
    const bool pentagon = C.pentagon_residual(phi).is_zero();
    v.require(pentagon, "pentagon residual vanishes mod hbar^3");
    if (!pentagon) return v;
    int jacobi = 0;
    for (int t = 0; t < kJacobiTriples; ++t) {
        const int d = 1 + t % 2, e = 1 + (t / 2) % 2, f = 1 + (t / 4) % 2;
        const auto x = random_tensor(rng, *K.U, d, 2, N, N), y = random_tensor(rng, *K.U, e, 2, N, N),
                   z = random_tensor(rng, *K.U, f, 2, N, N);
        const long s = parity_sign(static_cast<long>(d - 1) * (e - 1));
        const auto lhs = C.bracket_phi(x, C.bracket_phi(y, z, phi), phi);
        const auto rhs = C.bracket_phi(C.bracket_phi(x, y, phi), z, phi) + C.bracket_phi(y, C.bracket_phi(x, z, phi), phi) * Rational(s);
        jacobi += lhs == rhs;
    }
    v.require(jacobi == kJacobiTriples, "graded Jacobi " + std::to_string(jacobi) + "/" + std::to_string(kJacobiTriples));
    return v;
}

Twist bundled_twist(const CochainCalculus& C, int N) {
    const json doc = load("twist_sl2.json");
    const Node t = Node(doc)["twist"];
    const LieTensor r = lie_tensor_from(t["r"], C.hopf().algebra(), N);
    return Twist(C.hopf(), C.one(2, N) + alt_embed(r, N) * HbarSeries::monomial(rational_from(t["scale"]), 1, N));
}

Verdict twist_layer() {
    Verdict v;
    Calc K(bundled_sl2());
    {
        const auto& C = K.C;
        const UTensor res = C.twist_residual(bundled_twist(C, 2), Associator::trivial(C.hopf(), 2));
        v.require(res.hbar_part(0).is_zero() && res.hbar_part(1).is_zero(), "twist residual vanishes at order hbar");
    }
    std::mt19937_64 rng(106);
    {
        const auto& C = K.C;
        const Twist J = bundled_twist(C, 1);
        const auto one = Associator::trivial(C.hopf(), 1);
        const CochainCalculus Ch(HopfModel(K.U, C.conjugated_coproduct(Twist(C.hopf(), J.inverse()))));
        int ok = 0;
        for (int t = 0; t < kTwistPairs; ++t) {
            const auto x = random_tensor(rng, *K.U, 2, 2, 1, 1), y = random_tensor(rng, *K.U, 2, 2, 1, 1);
            ok += C.twist_conjugate(Ch.gerstenhaber(x, y), J) ==
                  C.bracket_phi(C.twist_conjugate(x, J), C.twist_conjugate(y, J), one);
        }
        v.require(ok == kTwistPairs, "intertwining mod hbar^2 " + std::to_string(ok) + "/" + std::to_string(kTwistPairs));
    }
    {
        const auto& C = K.C;
        const Twist J = bundled_twist(C, 2);
        int ok = 0;
        for (int t = 0; t < kInverseElements; ++t) {
            const auto x = random_tensor(rng, *K.U, 1 + t % 3, 2, 2, 2);
            ok += C.twist_conjugate_inverse(C.twist_conjugate(x, J), J) == Cochain(x);
        }
        v.require(ok == kInverseElements, "F then F^-1 is the identity mod hbar^3 " + std::to_string(ok) + "/" +
                                              std::to_string(kInverseElements));
    }
    return v;
}

Request bundled_request(const std::string& command, std::vector<std::string> files, int hbar = 3, int trials = 20) {
    Request r;
    r.command = command;
    for (const auto& f : files) r.inputs.push_back(std::string(QPQ_DATA_DIR) + "/" + f);
    r.hbar = hbar;
    r.trials = trials;
    return r;
}

bool check_passed(const json& rep, const std::string& name) {
    for (const auto& c : rep["checks"])
        if (c["name"] == name) return c["verdict"] == "pass";
    return false;
}

Verdict star_product() {
    Verdict v;
    const json verify = run(bundled_request("verify-star", {"moyal_r2.json"})).report;
    v.require(check_passed(verify, "phi_associativity"), "verify-star: phi-associativity mod hbar^4");
    v.require(check_passed(verify, "commutator"), "verify-star: skew part of m_1 equals pi");
    const json solve = run(bundled_request("solve-star", {"moyal_r2.json"})).report;
    v.require(check_passed(solve, "solvable"), "solve-star: every order solves");
    v.require(check_passed(solve, "gauge_equivalent_to_input"), "solve-star: normal forms agree");
    const json mc = run(bundled_request("check-mc", {"mc_moyal.json"})).report;
    v.require(mc["verdict"] == "pass", "mc residual of hbar pi vanishes");
    return v;
}

Verdict linfty() {
    Verdict v;
    std::mt19937_64 rng(108);
    int valid = 0, flagged = 0;
    for (int t = 0; t < kDglas; ++t) {
        const Dgla D = random_dgla(rng);
        valid += check_structure(dgla_structure(D), 3).empty();
        if (t < kMutations) flagged += !check_structure(dgla_structure(jacobi_breaking_mutation(rng, D)), 3).empty();
    }
    v.require(valid == kDglas, "random DGLAs valid " + std::to_string(valid) + "/" + std::to_string(kDglas));
    v.require(flagged == kMutations, "mutations flagged " + std::to_string(flagged) + "/" + std::to_string(kMutations));
    int morph = 0, lower = 0;
    for (int t = 0; t < kDeformPairs; ++t) {
        const auto S = dgla_structure(random_dgla(rng));
        LInftyMorphism phi = LInftyMorphism::identity(S);
        if (t % 2) phi = deform_morphism(phi, random_homotopy(rng, S, S, 2), S, S);
        const int m = 1 + t % 3;
        const auto out = deform_morphism(phi, random_homotopy(rng, S, S, m), S, S);
        morph += check_morphism(out, S, S, 3).empty();
        bool same = true;
        for (int k = 1; k < m; ++k)
            for (const Word& w : S.basis(k)) same = same && out.component(w) == phi.component(w);
        lower += same;
    }
    const auto n = std::to_string(kDeformPairs);
    v.require(morph == kDeformPairs, "deformed outputs are morphisms " + std::to_string(morph) + "/" + n);
    v.require(lower == kDeformPairs, "arities below m unchanged " + std::to_string(lower) + "/" + n);
    return v;
}

Verdict cdybe() {
    Verdict v;
    const json doc = load("rho_sl2.json");
    const DynamicalRMatrix rho = dynamical_r_from(Node(doc)["dynamical_r"]);
    v.require(h_equivariance_residual(rho).empty(), "h-equivariance residual empty");
    const LieTensor zero = lie_tensor(rho.g);
    const Alternating base = cdybe_residual(rho, zero);
    bool affine = true;
    for (int c = -3; c <= 3; ++c) {
        LieTensor Z = lie_tensor(rho.g);
        Z.add({E, F, H}, Rational(c));
        affine = affine && cdybe_residual(rho, Z) == base - alternating_from_tensor(Z, rho.nvars());
    }
    v.require(affine, "residual is affine in Z");
    const auto zstar = constant_z_solution(rho);
    v.require(zstar.has_value(), "a constant Z* gives a zero residual (residual " + alternating_string(rho.g, base) + ")");
    bool others_fail = true;
    for (int c = -3; c <= 3; ++c) {
        LieTensor Z = lie_tensor(rho.g);
        Z.add({E, F, H}, Rational(c));
        if (zstar && Z == *zstar) continue;
        others_fail = others_fail && !cdybe_residual(rho, Z).empty();
    }
    v.require(others_fail, "other constant Z leave a nonzero residual");
    return v;
}

Verdict drinfeld() {
    Verdict v;
    auto U = std::make_shared<const Uea>(bundled_sl2(), 4);
    const HopfModel Hm(U);
    std::mt19937_64 rng(110);
    int agree = 0;
    for (int t = 0; t < kDeltaElements; ++t) {
        const auto a = random_tensor(rng, *U, 1, 3, 3, 3);
        bool ok = true;
        for (int n = 0; n <= 3; ++n) ok = ok && delta_n(Hm, a, n) == delta_n_inclusion_exclusion(Hm, a, n);
        agree += ok;
    }
    v.require(agree == kDeltaElements, "delta formulas agree " + std::to_string(agree) + "/" + std::to_string(kDeltaElements));
    const auto scaled = uprime_valuation(Hm, U->element({E}, HbarSeries::monomial(1, 1, 3)), 3);
    v.require(scaled.passed_through == 3 && !scaled.first_failure, "hbar e passes n <= 3");
    const auto bare = uprime_valuation(Hm, U->element({E}, HbarSeries(Rational(1), 3)), 3);
    v.require(bare.first_failure && *bare.first_failure == 1, "e fails at n = 1");
    return v;
}

Verdict determinism() {
    Verdict v;
    const std::vector<Request> requests{
        bundled_request("check-jacobi", {"sl2.json"}),
        bundled_request("check-invariance", {"sl2.json", "sl2_invariant_z.json"}),
        bundled_request("check-quasi-poisson", {"sl2.json", "quasi_poisson_sl2.json"}),
        bundled_request("check-mc", {"mc_moyal.json"}),
        bundled_request("check-pentagon", {"sl2.json", "phi_sl2.json"}),
        bundled_request("check-twist", {"sl2.json", "twist_sl2.json"}, 1),
        bundled_request("verify-star", {"moyal_r2.json"}),
        bundled_request("solve-star", {"moyal_r2.json"}),
        bundled_request("brace-axioms", {"sl2.json"}, 3, 5),
        bundled_request("linfty-check", {"dgla_current_sl2.json"}),
        bundled_request("linfty-deform", {"dgla_current_sl2.json"}, 3, 5),
        bundled_request("cdybe-check", {"rho_sl2.json"}),
        bundled_request("momentum-check", {"momentum_moyal.json"}),
        bundled_request("xu-check", {"xu_split.json"}),
    };
    std::set<std::string> seen;
    for (const auto& r : requests) {
        seen.insert(r.command);
        const std::string a = without_timing(run(r).report).dump(), b = without_timing(run(r).report).dump();
        v.require(a == b, r.command);
    }
    v.require(seen.size() == command_names().size(), "every command covered");
    return v;
}

struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Verdict()> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "algebraic kernel", kLimitKernel, kernel},
        {2, "quasi-Poisson identity", kLimitQuasiPoisson, quasi_poisson},
        {3, "brace bialgebra", 0, brace},
        {4, "I_nu intertwining", 0, intertwining},
        {5, "deformed bracket", 0, deformed_bracket},
        {6, "twist layer", 0, twist_layer},
        {7, "star product", kLimitStar, star_product},
        {8, "L-infinity layer", 0, linfty},
        {9, "CDYBE", kLimitCdybe, cdybe},
        {10, "Drinfeld functor shadow", 0, drinfeld},
        {11, "determinism", 0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.body();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0) v.require(s < c.limit, "runtime under " + std::to_string(static_cast<int>(c.limit)) + " s");
        failures += !v.passed;
        std::printf("%s %2d %s (%.2f s)\n", v.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), s);
        for (const auto& n : v.notes) std::printf("       %s\n", n.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures;
}
