#pragma once

#include "../brace/coalgebra.hpp"
#include "../cochain/calculus.hpp"
#include "../cochain/operators.hpp"
#include "../cochain/star.hpp"
#include "../linfty/deform.hpp"
#include "../linfty/random.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

namespace qpq::io {

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_parse = 2, exit_precondition = 3, exit_overflow = 4 };

struct Request {
    std::string command;
    std::vector<std::string> inputs;
    int hbar = 3;
    int arity = 3;
    int filtration = 3;
    int outer = 2;
    int trials = 20;
    std::uint64_t seed = 1;
    std::string format = "text";
};

struct Check {
    std::string name;
    bool passed = true;
    json witness;  // null for passing checks
};

struct Outcome {
    json report;
    int exit_code = exit_pass;
};

namespace detail {

inline json witness(const std::string& type, json value) { return {{"type", type}, {"value", std::move(value)}}; }

// Merges top-level keys of every input; identical repeats are allowed.
inline json load_inputs(const std::vector<std::string>& paths) {
    json merged = json::object();
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw parse_error(p, "cannot open input file");
        std::stringstream ss;
        ss << in.rdbuf();
        json doc;
        try {
            doc = parse_document(ss.str());
        } catch (const parse_error& e) {
            throw parse_error(p + ":" + e.where, e.what());
        }
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (it.key() == "kind") continue;
            if (merged.contains(it.key()) && merged[it.key()] != it.value())
                throw parse_error(p + ":/" + it.key(), "conflicts with an earlier input");
            merged[it.key()] = it.value();
        }
    }
    return merged;
}

struct Context {
    const Request& req;
    Node doc;
    std::vector<Check> checks;
    json extra = json::object();

    void add(std::string name, bool passed, json w = nullptr) {
        checks.push_back({std::move(name), passed, passed ? json(nullptr) : std::move(w)});
    }
};

struct Calculus {
    LieAlgebra L;
    std::shared_ptr<const Uea> U;
    CochainCalculus C;
    Calculus(LieAlgebra l, int filtration)
        : L(l), U(std::make_shared<const Uea>(std::move(l), 4 * filtration)), C(HopfModel(U)) {}
};

inline Associator associator_from(const Node& n, const CochainCalculus& C, int N) {
    if (n.has("element")) return Associator::make(C.hopf(), utensor_from(n["element"], C.hopf().uea(), 3, N));
    const LieTensor Z = lie_tensor_from(n["z"], C.hopf().algebra(), N);
    const Rational s = rational_from(n["scale"]);
    return Associator::make(C.hopf(), C.one(3, N) + alt_embed(Z, N) * HbarSeries::monomial(s, 2, N));
}

inline Associator associator_or_trivial(const Node& doc, const CochainCalculus& C, int N) {
    return doc.has("associator") ? associator_from(doc["associator"], C, N) : Associator::trivial(C.hopf(), N);
}

inline Twist twist_from(const Node& n, const CochainCalculus& C, int N) {
    if (n.has("element")) return Twist(C.hopf(), utensor_from(n["element"], C.hopf().uea(), 2, N));
    const LieTensor r = lie_tensor_from(n["r"], C.hopf().algebra(), N);
    const Rational s = rational_from(n["scale"]);
    return Twist(C.hopf(), C.one(2, N) + alt_embed(r, N) * HbarSeries::monomial(s, 1, N));
}

inline json poly_defects_json(const std::vector<PolyDefect>& d) {
    json out = json::array();
    for (const auto& x : d) out.push_back({{"generator", x.i}, {"residual", polyvector_json(x.residual)}});
    return out;
}

inline json linfty_defects_json(const std::vector<LInftyDefect>& d) {
    json out = json::array();
    for (const auto& x : d)
        out.push_back({{"arity", x.arity}, {"input", x.input}, {"residual", graded_tensor_json(x.residual)}});
    return out;
}

inline void check_jacobi_cmd(Context& cx) {
    const LieAlgebra L = lie_algebra_from(cx.doc["lie_algebra"]);
    json d = json::array();
    for (const auto& x : check_jacobi(L))
        d.push_back({{"i", x.i}, {"j", x.j}, {"k", x.k}, {"residual", lie_vector_json(x.value)}});
    cx.add("jacobi", d.empty(), witness("jacobi_defects", d));
}

inline void check_invariance_cmd(Context& cx) {
    const LieAlgebra L = lie_algebra_from(cx.doc["lie_algebra"]);
    const LieTensor t = lie_tensor_from(cx.doc["tensor"], L, cx.req.hbar);
    json d = json::array();
    for (const auto& x : adjoint_invariance(L, t))
        d.push_back({{"generator", x.generator}, {"residual", lie_tensor_json(x.residual)}});
    cx.add("invariance", d.empty(), witness("invariance_defects", d));
}

inline void check_quasi_poisson_cmd(Context& cx) {
    const int N = cx.req.hbar;
    const LieAlgebra L = lie_algebra_from(cx.doc["lie_algebra"]);
    const ActionMap act = action_from(cx.doc["action"], L, N);
    const LieTensor Z = lie_tensor_from(cx.doc["Z"], L, N);
    PolyVector pi(act.dim(), N);
    if (cx.doc.has("pi")) {
        pi = polyvector_from(cx.doc["pi"], N);
    } else {
        const LieTensor r = lie_tensor_from(cx.doc["r"], L, N);
        pi = gamma_push(r, act);
        const PolyVector cross = gamma_push(schouten_algebraic(L, r, r), act) - schouten_bracket(pi, pi);
        cx.add("push_commutes_with_schouten", cross.is_zero(), witness("polyvector", polyvector_json(cross)));
    }
    const auto rep = quasi_poisson_residual(pi, Z, act);
    cx.add("schouten_square", rep.residual.is_zero(), witness("polyvector", polyvector_json(rep.residual)));
    cx.add("invariance", rep.invariance.empty(), witness("poly_defects", poly_defects_json(rep.invariance)));
}

inline void check_mc_cmd(Context& cx) {
    const int N = cx.req.hbar;
    const PolyVector pi = polyvector_from(cx.doc["pi_h"], N);
    const PolyVector r = cx.doc.has("r_field") ? polyvector_from(cx.doc["r_field"], N) : PolyVector(pi.dim(), N);
    const PolyVector res = mc_residual(pi, r);
    cx.add("maurer_cartan", res.is_zero(), witness("polyvector", polyvector_json(res)));
}

inline void check_pentagon_cmd(Context& cx) {
    const int N = cx.req.hbar;
    Calculus K(lie_algebra_from(cx.doc["lie_algebra"]), cx.req.filtration);
    const Associator phi = associator_from(cx.doc["associator"], K.C, N);
    const UTensor res = K.C.pentagon_residual(phi).truncated(N);
    cx.add("pentagon", res.is_zero(), witness("cochain", cochain_json(res)));
}

inline void check_twist_cmd(Context& cx) {
    const int N = cx.req.hbar;
    Calculus K(lie_algebra_from(cx.doc["lie_algebra"]), cx.req.filtration);
    const Twist J = twist_from(cx.doc["twist"], K.C, N);
    const Associator phi = associator_or_trivial(cx.doc, K.C, N);
    const UTensor res = K.C.twist_residual(J, phi).truncated(N);
    cx.add("twist_equation", res.is_zero(), witness("cochain", cochain_json(res)));
}

inline void verify_star_cmd(Context& cx) {
    const int N = cx.req.hbar;
    Calculus K(lie_algebra_from(cx.doc["lie_algebra"]), cx.req.filtration);
    const StarProduct m(K.C.hopf(), utensor_from(cx.doc["star"], *K.U, 2, N));
    const Associator phi = associator_or_trivial(cx.doc, K.C, N);
    const UTensor res = K.C.phi_assoc_residual(m, phi).truncated(N);
    cx.add("phi_associativity", res.is_zero(), witness("cochain", cochain_json(res)));
    if (cx.doc.has("pi")) {
        const UTensor d = m.skew_part() - alt_embed(lie_tensor_from(cx.doc["pi"], K.L, N), N);
        cx.add("commutator", d.is_zero(), witness("cochain", cochain_json(d)));
    }
}

inline void solve_star_cmd(Context& cx) {
    const int N = cx.req.hbar;
    Calculus K(lie_algebra_from(cx.doc["lie_algebra"]), cx.req.filtration);
    const LieTensor pi = lie_tensor_from(cx.doc["pi"], K.L, N);
    const LieTensor Z = cx.doc.has("Z") ? lie_tensor_from(cx.doc["Z"], K.L, N) : lie_tensor(K.L, N);
    const Associator phi = associator_or_trivial(cx.doc, K.C, N);
    const auto rep = solve_star_order(K.C, pi, Z, phi, N);
    if (!rep.solved) {
        cx.add("solvable", false,
               witness("obstruction", {{"order", rep.failed_order}, {"class", cochain_json(rep.obstruction_class)}}));
        return;
    }
    cx.add("solvable", true);
    const StarProduct nf = star_normal_form(K.C, *rep.product);
    cx.extra["product"] = cochain_json(rep.product->element());
    cx.extra["normal_form"] = cochain_json(nf.element());
    if (cx.doc.has("star")) {
        const StarProduct ref(K.C.hopf(), utensor_from(cx.doc["star"], *K.U, 2, N));
        const UTensor d = star_normal_form(K.C, ref).element() - nf.element();
        cx.add("gauge_equivalent_to_input", d.is_zero(), witness("cochain", cochain_json(d)));
    }
}

inline void brace_axioms_cmd(Context& cx) {
    const LieAlgebra L = lie_algebra_from(cx.doc["lie_algebra"]);
    BraceSign rule = BraceSign::standard;
    if (cx.doc.has("sign")) {
        const std::string s = cx.doc["sign"].string();
        if (s == "mutated") rule = BraceSign::mutated;
        else if (s != "standard") cx.doc["sign"].fail("expected 'standard' or 'mutated'");
    }
    auto U = std::make_shared<const Uea>(L, 4 * cx.req.filtration);
    BraceCoalgebra B(HopfModel(U), {8, 8}, rule);
    BraceAxiomConfig cfg{cx.req.trials, cx.req.seed, cx.req.outer, std::min(cx.req.arity, 8), cx.req.filtration};
    const auto rep = bialgebra_axiom_suite(B, cfg);
    for (const auto& a : rep.axioms)
        cx.add(a.name, a.failed == 0,
               witness("text", {{"checked", a.checked}, {"failed", a.failed}, {"residuals", a.residuals}}));
}

inline void linfty_check_cmd(Context& cx) {
    const Dgla D = dgla_from(cx.doc["dgla"]);
    const LInftyStructure S = dgla_structure(D, cx.req.arity, cx.req.hbar);
    const auto d = check_structure(S, cx.req.arity);
    cx.add("structure", d.empty(), witness("linfty_defects", linfty_defects_json(d)));
}

inline void linfty_deform_cmd(Context& cx) {
    const Dgla D = dgla_from(cx.doc["dgla"]);
    const int K = cx.req.arity;
    const LInftyStructure S = dgla_structure(D, K, cx.req.hbar);
    const auto base = check_structure(S, K);
    if (!base.empty()) throw precondition_failed("input is not an L-infinity structure", "");
    const LInftyMorphism phi = LInftyMorphism::identity(S);
    std::mt19937_64 rng(cx.req.seed);
    json morphism_fail = nullptr, lower_fail = nullptr;
    for (int t = 0; t < cx.req.trials; ++t) {
        const int m = 1 + t % std::max(1, K - 1);
        const Homotopy V = random_homotopy(rng, S, S, m);
        const LInftyMorphism out = deform_morphism(phi, V, S, S);
        const auto d = check_morphism(out, S, S, K);
        if (!d.empty() && morphism_fail.is_null())
            morphism_fail = {{"trial", t}, {"m", m}, {"defects", linfty_defects_json(d)}};
        for (int n = 1; n < m && lower_fail.is_null(); ++n)
            for (const Word& w : S.basis(n))
                if (!(out.component(w) == phi.component(w))) {
                    lower_fail = {{"trial", t}, {"m", m}, {"input", w},
                                  {"residual", graded_tensor_json(out.component(w) - phi.component(w))}};
                    break;
                }
    }
    cx.add("deformed_is_morphism", morphism_fail.is_null(), witness("deform_defect", morphism_fail));
    cx.add("lower_arities_unchanged", lower_fail.is_null(), witness("deform_defect", lower_fail));
}

inline void cdybe_check_cmd(Context& cx) {
    const DynamicalRMatrix rho = dynamical_r_from(cx.doc["dynamical_r"]);
    const LieTensor Z = cx.doc.has("Z") ? lie_tensor_from(cx.doc["Z"], rho.g, cx.req.hbar) : lie_tensor(rho.g, cx.req.hbar);
    json eq = json::array();
    for (const auto& d : h_equivariance_residual(rho))
        eq.push_back({{"h_index", d.h_index}, {"residual", alternating_json(d.residual)}});
    cx.add("h_equivariance", eq.empty(), witness("equivariance_defects", eq));
    const Alternating res = cdybe_residual(rho, Z);
    cx.add("cdybe", res.empty(), witness("alternating", alternating_json(res)));
    const auto z = constant_z_solution(rho);
    cx.extra["constant_z"] = z ? lie_tensor_json(*z) : json(nullptr);
}

inline Bilinear star_operation(const Node& doc, const Calculus& K, const ActionMap& act, int N) {
    return operator_product(utensor_from(doc["star"], *K.U, 2, N), act);
}

inline void momentum_check_cmd(Context& cx) {
    const int N = cx.req.hbar;
    Calculus K(lie_algebra_from(cx.doc["lie_algebra"]), cx.req.filtration);
    const ActionMap act = action_from(cx.doc["action"], K.L, N);
    const Bilinear star = star_operation(cx.doc, K, act, N);
    const PolyVector pi = polyvector_from(cx.doc["pi"], N);
    const auto mu = polyvectors_from(cx.doc["mu"], N);
    const auto M = cx.doc.has("M") ? polyvectors_from(cx.doc["M"], N) : mu;
    const auto samples = polyvectors_from(cx.doc["samples"], N);
    json d = json::array();
    for (const auto& x : momentum_residual(mu, M, star, pi, samples))
        d.push_back({{"generator", x.generator}, {"sample", x.sample}, {"residual", polyvector_json(x.residual)}});
    cx.add("strong_invariance", d.empty(), witness("momentum_defects", d));
}

inline void xu_check_cmd(Context& cx) {
    const int N = cx.req.hbar;
    Calculus K(lie_algebra_from(cx.doc["lie_algebra"]), cx.req.filtration);
    const ActionMap act = action_from(cx.doc["action"], K.L, N);
    const Bilinear star = star_operation(cx.doc, K, act, N);
    const Node s = cx.doc["split"];
    SplitModel S;
    S.p = static_cast<int>(s["h_fields"].size());
    S.h_fields = polyvectors_from(s["h_fields"], N);
    S.lambda_samples = polyvectors_from(s["lambda_samples"], N);
    S.group_samples = polyvectors_from(s["group_samples"], N);
    S.order = N;
    const auto rep = xu_conditions_check(star, S);
    for (const auto& c : rep.conditions)
        cx.add("xu_condition_" + std::to_string(c.index), c.passed, witness("text", c.failures));
    json r = json::array();
    for (const auto& p : rep.extracted_r) r.push_back(polyvector_json(p));
    cx.extra["extracted_r"] = r;
}

using Command = void (*)(Context&);

inline const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"check-jacobi", check_jacobi_cmd},       {"check-invariance", check_invariance_cmd},
        {"check-quasi-poisson", check_quasi_poisson_cmd}, {"check-mc", check_mc_cmd},
        {"check-pentagon", check_pentagon_cmd},   {"check-twist", check_twist_cmd},
        {"verify-star", verify_star_cmd},         {"solve-star", solve_star_cmd},
        {"brace-axioms", brace_axioms_cmd},       {"linfty-check", linfty_check_cmd},
        {"linfty-deform", linfty_deform_cmd},     {"cdybe-check", cdybe_check_cmd},
        {"momentum-check", momentum_check_cmd},   {"xu-check", xu_check_cmd},
    };
    return table;
}

} // namespace detail

inline std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (const auto& [name, f] : detail::commands()) out.push_back(name);
    return out;
}

inline json config_json(const Request& r) {
    return {{"command", r.command},
            {"inputs", r.inputs},
            {"bounds", {{"hbar", r.hbar}, {"arity", r.arity}, {"filtration", r.filtration}, {"outer", r.outer}}},
            {"trials", r.trials},
            {"seed", std::to_string(r.seed)}};
}

inline Outcome run(const Request& req) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    json& rep = out.report;
    rep["schema_version"] = schema_version;
    rep["config"] = config_json(req);
    json checks = json::array();
    try {
        if (req.hbar < 0 || req.arity < 1 || req.filtration < 1 || req.outer < 1 || req.trials < 1)
            throw parse_error("bounds", "bounds must be positive");
        auto it = detail::commands().find(req.command);
        if (it == detail::commands().end()) throw parse_error("command", "unknown command '" + req.command + "'");
        const json doc = detail::load_inputs(req.inputs);
        detail::Context cx{req, Node(doc), {}, json::object()};
        it->second(cx);
        std::sort(cx.checks.begin(), cx.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
        bool all = true;
        for (const auto& c : cx.checks) {
            json e = {{"name", c.name}, {"verdict", c.passed ? "pass" : "fail"}};
            if (!c.passed) e["witness"] = c.witness;
            checks.push_back(std::move(e));
            all = all && c.passed;
        }
        if (!cx.extra.empty()) rep["results"] = cx.extra;
        out.exit_code = all ? exit_pass : exit_fail;
        rep["verdict"] = all ? "pass" : "fail";
    } catch (const parse_error& e) {
        out.exit_code = exit_parse;
        rep["verdict"] = "error";
        rep["error"] = {{"kind", "parse"}, {"location", e.where}, {"message", e.what()}};
    } catch (const invalid_input& e) {
        out.exit_code = exit_parse;
        rep["verdict"] = "error";
        rep["error"] = {{"kind", "invalid-input"}, {"message", e.what()}};
    } catch (const precondition_failed& e) {
        out.exit_code = exit_precondition;
        rep["verdict"] = "rejected-precondition";
        rep["error"] = {{"kind", "precondition"}, {"message", e.what()}, {"residual", e.residual}};
    } catch (const unsupported& e) {
        out.exit_code = exit_precondition;
        rep["verdict"] = "rejected-precondition";
        rep["error"] = {{"kind", "unsupported"}, {"message", e.what()}};
    } catch (const bound_overflow& e) {
        out.exit_code = exit_overflow;
        rep["verdict"] = "error";
        rep["error"] = {{"kind", "bound-overflow"}, {"message", e.what()}};
    }
    rep["checks"] = checks;
    rep["exit_code"] = out.exit_code;
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep["timing"] = {{"elapsed_ms", ms}};
    return out;
}

// The report without its timing field, for reproducibility comparisons.
inline json without_timing(json report) {
    report.erase("timing");
    return report;
}

inline std::string render_text(const json& rep) {
    std::ostringstream os;
    os << rep["config"]["command"].get<std::string>() << ": " << rep["verdict"].get<std::string>() << "\n";
    for (const auto& c : rep["checks"]) {
        os << "  " << c["name"].get<std::string>() << ": " << c["verdict"].get<std::string>() << "\n";
        if (c.contains("witness")) os << "    witness: " << c["witness"].dump() << "\n";
    }
    if (rep.contains("error")) os << "  error: " << rep["error"]["message"].get<std::string>() << "\n";
    if (rep.contains("results"))
        for (auto it = rep["results"].begin(); it != rep["results"].end(); ++it)
            os << "  " << it.key() << ": " << it.value().dump() << "\n";
    return os.str();
}

} // namespace qpq::io
