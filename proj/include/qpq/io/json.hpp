#pragma once

#include "../cdybe/cdybe.hpp"
#include "../cochain/cochain.hpp"
#include "../linfty/structure.hpp"
#include "../poly/action.hpp"

#include <json.hpp>

#include <limits>

namespace qpq::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

// Malformed input; `where` is a JSON pointer into the document.
struct parse_error : invalid_input {
    std::string where;
    parse_error(const std::string& where_, const std::string& what)
        : invalid_input(where_ + ": " + what), where(where_) {}
};

// Cursor into a document that remembers its JSON pointer for error messages.
class Node {
public:
    Node(const json& j, std::string path = "") : j_(&j), path_(std::move(path)) {}

    const json& raw() const { return *j_; }
    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& what) const { throw parse_error(path_.empty() ? "/" : path_, what); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
    Node operator[](const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        if (!j_->contains(key)) fail("missing key '" + key + "'");
        return Node((*j_)[key], path_ + "/" + key);
    }
    Node operator[](std::size_t i) const { return Node((*j_)[i], path_ + "/" + std::to_string(i)); }
    std::size_t size() const {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }

    long long integer() const {
        if (!j_->is_number_integer()) fail("expected an integer");
        return j_->get<long long>();
    }
    int index(int bound) const {
        const long long v = integer();
        if (v < 0 || v >= bound) fail("index out of range");
        return static_cast<int>(v);
    }
    std::string string() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }
    std::vector<int> indices(int bound) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].index(bound));
        return out;
    }

private:
    const json* j_;
    std::string path_;
};

inline json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
    return z.get_str();
}

inline mpz_class integer_from(const Node& n) {
    if (n.raw().is_number_integer()) return mpz_class(std::to_string(n.raw().get<long long>()));
    mpz_class z;
    if (!n.raw().is_string() || z.set_str(n.raw().get<std::string>(), 10) != 0) n.fail("expected an integer");
    return z;
}

// "p/q" when not an integer.
inline json rational_json(const Rational& q) {
    if (q.get_den() == 1) return integer_json(q.get_num());
    return q.get_str();
}

inline Rational rational_from(const Node& n) {
    if (n.raw().is_number_integer()) return Rational(integer_from(n));
    if (!n.raw().is_string()) n.fail("expected a rational number");
    Rational q;
    if (q.set_str(n.raw().get<std::string>(), 10) != 0 || q.get_den() == 0) n.fail("malformed rational");
    q.canonicalize();
    return q;
}

inline json series_json(const HbarSeries& s) {
    json out = json::array();
    for (const auto& [k, c] : s.terms())
        out.push_back({{"pow", k}, {"num", integer_json(c.get_num())}, {"den", integer_json(c.get_den())}});
    return out;
}

inline HbarSeries series_from(const Node& n, int order) {
    HbarSeries s(order);
    for (std::size_t i = 0; i < n.size(); ++i) {
        const Node t = n[i];
        const long long p = t["pow"].integer();
        if (p < 0) t["pow"].fail("negative hbar power");
        const mpz_class den = integer_from(t["den"]);
        if (den == 0) t["den"].fail("zero denominator");
        Rational c(integer_from(t["num"]), den);
        c.canonicalize();
        if (p <= order) s.add_term(static_cast<int>(p), c);
    }
    return s;
}

inline json lie_vector_json(const LieVector& v) {
    json out = json::array();
    for (const auto& [k, c] : v) out.push_back({{"k", k}, {"coeff", rational_json(c)}});
    return out;
}

inline LieVector lie_vector_from(const Node& n, int dim) {
    LieVector v;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const Rational c = rational_from(n[i]["coeff"]);
        if (!is_zero(c)) v[n[i]["k"].index(dim)] += c;
    }
    std::erase_if(v, [](const auto& kv) { return is_zero(kv.second); });
    return v;
}

inline json lie_algebra_json(const LieAlgebra& L) {
    json gens = json::array(), brackets = json::array();
    for (const auto& g : L.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
    for (const auto& [ij, v] : L.stored_brackets())
        brackets.push_back({{"i", ij.first}, {"j", ij.second}, {"terms", lie_vector_json(v)}});
    return {{"generators", gens}, {"brackets", brackets}};
}

inline LieAlgebra lie_algebra_from(const Node& n) {
    std::vector<Generator> gens;
    const Node g = n["generators"];
    for (std::size_t i = 0; i < g.size(); ++i) {
        const long long d = g[i]["degree"].integer();
        if (d < -64 || d > 64) g[i]["degree"].fail("degree out of range");
        gens.push_back({g[i]["name"].string(), static_cast<int>(d)});
    }
    LieAlgebra L(std::move(gens));
    const Node b = n["brackets"];
    for (std::size_t t = 0; t < b.size(); ++t) {
        try {
            L.set_bracket(b[t]["i"].index(L.dim()), b[t]["j"].index(L.dim()), lie_vector_from(b[t]["terms"], L.dim()));
        } catch (const parse_error&) {
            throw;
        } catch (const invalid_input& e) {
            b[t].fail(e.what());
        }
    }
    return L;
}

inline json graded_tensor_json(const GradedTensor& t) {
    json terms = json::array();
    for (const auto& [w, c] : t.terms()) terms.push_back({{"indices", w}, {"coeff_series", series_json(c)}});
    return terms;
}

inline json lie_tensor_json(const LieTensor& t) {
    return {{"arity", t.is_zero() ? 0 : t.arity()}, {"terms", graded_tensor_json(t)}};
}

inline LieTensor lie_tensor_from(const Node& n, const LieAlgebra& L, int order) {
    LieTensor t = lie_tensor(L, order);
    const long long arity = n["arity"].integer();
    const Node terms = n["terms"];
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Word w = terms[i]["indices"].indices(L.dim());
        if (static_cast<long long>(w.size()) != arity) terms[i]["indices"].fail("word length differs from arity");
        t.add(w, series_from(terms[i]["coeff_series"], order));
    }
    return t;
}

inline json utensor_terms_json(const UTensor& t) {
    json out = json::array();
    for (const auto& [key, c] : t.terms()) out.push_back({{"words", key}, {"coeff_series", series_json(c)}});
    return out;
}

inline json cochain_json(const Cochain& c) {
    json arities = json::object();
    for (const auto& [n, t] : c.components()) arities[std::to_string(n)] = utensor_terms_json(t);
    return {{"arities", arities}};
}

inline json cochain_json(const UTensor& t) { return cochain_json(Cochain(t)); }

// The arity-n component of a cochain document.
inline UTensor utensor_from(const Node& n, const Uea& U, int arity, int order) {
    UTensor t(arity, order);
    const Node ar = n["arities"];
    if (!ar.raw().is_object()) ar.fail("expected an object keyed by arity");
    const std::string key = std::to_string(arity);
    for (auto it = ar.raw().begin(); it != ar.raw().end(); ++it)
        if (it.key() != key) ar.fail("unexpected arity " + it.key() + " (expected " + key + ")");
    if (!ar.has(key)) return t;
    const Node terms = ar[key];
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Node words = terms[i]["words"];
        if (words.size() != static_cast<std::size_t>(arity)) words.fail("expected one monomial per slot");
        std::vector<Monomial> k;
        for (std::size_t s = 0; s < words.size(); ++s) {
            Monomial m = words[s].indices(U.algebra().dim());
            if (!U.is_pbw(m)) words[s].fail("monomial is not in PBW order");
            k.push_back(std::move(m));
        }
        t.add(k, series_from(terms[i]["coeff_series"], order));
    }
    return t;
}

inline json polyvector_json(const PolyVector& p) {
    json terms = json::array();
    for (const auto& [k, c] : p.terms())
        terms.push_back({{"exps", k.exps}, {"slots", k.slots}, {"coeff_series", series_json(c)}});
    return {{"dim", p.dim()}, {"terms", terms}};
}

inline PolyVector polyvector_from(const Node& n, int order) {
    const long long dim = n["dim"].integer();
    if (dim < 0 || dim > 64) n["dim"].fail("dimension out of range");
    const int d = static_cast<int>(dim);
    PolyVector p(d, order);
    const Node terms = n["terms"];
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Node e = terms[i]["exps"];
        if (e.size() != static_cast<std::size_t>(d)) e.fail("expected one exponent per coordinate");
        std::vector<int> exps;
        for (std::size_t k = 0; k < e.size(); ++k) {
            const long long x = e[k].integer();
            if (x < 0 || x > 64) e[k].fail("exponent out of range");
            exps.push_back(static_cast<int>(x));
        }
        p.add(exps, terms[i]["slots"].indices(d), series_from(terms[i]["coeff_series"], order));
    }
    return p;
}

inline std::vector<PolyVector> polyvectors_from(const Node& n, int order) {
    std::vector<PolyVector> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(polyvector_from(n[i], order));
    return out;
}

inline ActionMap action_from(const Node& n, const LieAlgebra& L, int order) {
    try {
        return ActionMap(L, polyvectors_from(n["fields"], order));
    } catch (const parse_error&) {
        throw;
    } catch (const invalid_input& e) {
        n.fail(e.what());
    }
}

inline json polynomial_json(const Polynomial& p) {
    json out = json::array();
    for (const auto& [e, c] : p.terms()) out.push_back({{"exps", e}, {"coeff", rational_json(c)}});
    return out;
}

inline Polynomial polynomial_from(const Node& n, int nvars) {
    Polynomial p(nvars);
    for (std::size_t i = 0; i < n.size(); ++i) {
        const Node e = n[i]["exps"];
        if (e.size() != static_cast<std::size_t>(nvars)) e.fail("expected one exponent per lambda variable");
        Polynomial::Exponents x;
        for (std::size_t k = 0; k < e.size(); ++k) {
            const long long v = e[k].integer();
            if (v < 0 || v > 64) e[k].fail("exponent out of range");
            x.push_back(static_cast<int>(v));
        }
        p.add(x, rational_from(n[i]["coeff"]));
    }
    return p;
}

inline json alternating_json(const Alternating& t) {
    json out = json::array();
    for (const auto& [idx, c] : t)
        out.push_back({{"indices", idx}, {"numerator", polynomial_json(c.numerator())},
                       {"denominator", polynomial_json(c.denominator())}});
    return out;
}

inline Alternating alternating_from(const Node& n, int dim, int nvars) {
    Alternating t;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const Polynomial den = polynomial_from(n[i]["denominator"], nvars);
        if (den.is_zero()) n[i]["denominator"].fail("zero denominator");
        add_alternating(t, n[i]["indices"].indices(dim), RationalFunction(polynomial_from(n[i]["numerator"], nvars), den));
    }
    return t;
}

inline json dynamical_r_json(const DynamicalRMatrix& r) {
    json h = json::array();
    for (const auto& v : r.h) h.push_back(lie_vector_json(v));
    json entries = json::array();
    for (const auto& [idx, c] : r.value)
        entries.push_back({{"i", idx[0]}, {"j", idx[1]}, {"numerator", polynomial_json(c.numerator())},
                           {"denominator", polynomial_json(c.denominator())}});
    return {{"lie_algebra", lie_algebra_json(r.g)}, {"h", h}, {"entries", entries}};
}

// h is a list of generator indices or of explicit vectors [{k, coeff}].
inline DynamicalRMatrix dynamical_r_from(const Node& n) {
    LieAlgebra g = lie_algebra_from(n["lie_algebra"]);
    std::vector<LieVector> h;
    const Node hn = n["h"];
    for (std::size_t i = 0; i < hn.size(); ++i) {
        if (hn[i].raw().is_number_integer()) h.push_back({{hn[i].index(g.dim()), Rational(1)}});
        else h.push_back(lie_vector_from(hn[i], g.dim()));
    }
    const int nvars = static_cast<int>(h.size());
    Alternating value;
    const Node e = n["entries"];
    for (std::size_t k = 0; k < e.size(); ++k) {
        const int i = e[k]["i"].index(g.dim()), j = e[k]["j"].index(g.dim());
        if (i >= j) e[k].fail("entries must have i < j");
        const Polynomial den = polynomial_from(e[k]["denominator"], nvars);
        if (den.is_zero()) e[k]["denominator"].fail("zero denominator");
        add_alternating(value, {i, j}, RationalFunction(polynomial_from(e[k]["numerator"], nvars), den));
    }
    try {
        return make_dynamical_r(std::move(g), std::move(h), std::move(value));
    } catch (const parse_error&) {
        throw;
    } catch (const invalid_input& ex) {
        n.fail(ex.what());
    }
}

inline json dgla_json(const Dgla& D) {
    json d = json::array();
    for (std::size_t i = 0; i < D.d.size(); ++i)
        if (!D.d[i].empty()) d.push_back({{"i", i}, {"terms", lie_vector_json(D.d[i])}});
    return {{"lie_algebra", lie_algebra_json(D.L)}, {"differential", d}};
}

inline Dgla dgla_from(const Node& n) {
    Dgla D{lie_algebra_from(n["lie_algebra"]), {}};
    D.d.assign(D.L.dim(), {});
    if (!n.has("differential")) return D;
    const Node d = n["differential"];
    for (std::size_t k = 0; k < d.size(); ++k) {
        const int i = d[k]["i"].index(D.L.dim());
        LieVector v = lie_vector_from(d[k]["terms"], D.L.dim());
        for (const auto& [t, c] : v)
            if (D.L.degree(t) != D.L.degree(i) + 1) d[k]["terms"].fail("differential must raise degree by one");
        D.d[i] = std::move(v);
    }
    return D;
}

inline json document(const std::string& kind) { return {{"schema_version", schema_version}, {"kind", kind}}; }

inline json parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error("byte " + std::to_string(e.byte), "malformed JSON");
    }
    Node root(j);
    if (!root.has("schema_version")) root.fail("missing key 'schema_version'");
    if (root["schema_version"].integer() != schema_version) root["schema_version"].fail("unsupported schema version");
    return j;
}

} // namespace qpq::io
