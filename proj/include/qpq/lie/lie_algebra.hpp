#pragma once

#include "../core/graded_tensor.hpp"
#include "../core/koszul.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qpq {

using LieVector = std::map<int, Rational>;

inline void add_into(LieVector& y, const Rational& a, const LieVector& x) {
    for (const auto& [k, v] : x) {
        Rational t = y[k] + a * v;
        if (is_zero(t)) y.erase(k);
        else y[k] = t;
    }
}

struct Generator {
    std::string name;
    int degree = 0;
};

// Finite-dimensional graded Lie algebra by structure constants.
class LieAlgebra {
public:
    LieAlgebra() : degrees_(make_degrees({})) {}
    explicit LieAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {
        std::vector<int> d;
        for (const auto& g : gens_) d.push_back(g.degree);
        degrees_ = make_degrees(std::move(d));
    }

    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& generators() const { return gens_; }
    int degree(int i) const { return gens_.at(i).degree; }
    const std::string& name(int i) const { return gens_.at(i).name; }
    const DegreeTable& degree_table() const { return degrees_; }

    int index_of(const std::string& n) const {
        for (int i = 0; i < dim(); ++i)
            if (gens_[i].name == n) return i;
        throw invalid_input("unknown generator '" + n + "'");
    }

    // Stores [x_i, x_j] for i < j, or i == j on an odd generator.
    void set_bracket(int i, int j, LieVector value) {
        check_index(i);
        check_index(j);
        if (i > j) {
            const int s = -parity_sign(static_cast<long>(degree(i)) * degree(j));
            LieVector v;
            add_into(v, Rational(s), value);
            std::swap(i, j);
            value = std::move(v);
        }
        if (i == j && (degree(i) & 1) == 0) throw invalid_input("self-bracket of an even generator must vanish");
        for (const auto& [k, c] : value) {
            check_index(k);
            if (!is_zero(c) && degree(k) != degree(i) + degree(j))
                throw invalid_input("bracket is not degree-preserving");
        }
        std::erase_if(value, [](const auto& kv) { return is_zero(kv.second); });
        if (value.empty()) brackets_.erase({i, j});
        else brackets_[{i, j}] = std::move(value);
    }

    LieVector bracket(int i, int j) const {
        if (i <= j) {
            auto it = brackets_.find({i, j});
            return it == brackets_.end() ? LieVector{} : it->second;
        }
        auto it = brackets_.find({j, i});
        if (it == brackets_.end()) return {};
        LieVector v;
        add_into(v, Rational(-parity_sign(static_cast<long>(degree(i)) * degree(j))), it->second);
        return v;
    }

    LieVector bracket(const LieVector& a, const LieVector& b) const {
        LieVector out;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) add_into(out, x * y, bracket(i, j));
        return out;
    }

    const std::map<std::pair<int, int>, LieVector>& stored_brackets() const { return brackets_; }

    bool is_abelian() const { return brackets_.empty(); }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        if (a.dim() != b.dim() || a.brackets_ != b.brackets_) return false;
        for (int i = 0; i < a.dim(); ++i)
            if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree) return false;
        return true;
    }

private:
    void check_index(int i) const {
        if (i < 0 || i >= dim()) throw invalid_input("generator index out of range");
    }

    std::vector<Generator> gens_;
    DegreeTable degrees_;
    std::map<std::pair<int, int>, LieVector> brackets_;
};

struct JacobiDefect {
    int i, j, k;
    LieVector value;
};

// Graded Jacobi identity on all generator triples i <= j <= k.
inline std::vector<JacobiDefect> check_jacobi(const LieAlgebra& L) {
    std::vector<JacobiDefect> out;
    const int n = L.dim();
    auto gen = [](int i) { return LieVector{{i, Rational(1)}}; };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const long a = L.degree(i), b = L.degree(j), c = L.degree(k);
                LieVector r;
                add_into(r, Rational(parity_sign(a * c)), L.bracket(gen(i), L.bracket(j, k)));
                add_into(r, Rational(parity_sign(b * a)), L.bracket(gen(j), L.bracket(k, i)));
                add_into(r, Rational(parity_sign(c * b)), L.bracket(gen(k), L.bracket(i, j)));
                if (!r.empty()) out.push_back({i, j, k, std::move(r)});
            }
    return out;
}

inline std::string describe(const LieAlgebra& L, const LieVector& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : v) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str() << "*" << L.name(k);
    }
    return os.str();
}

} // namespace qpq
