#pragma once

#include "rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qpq {

template <class Key>
using SparseVector = std::map<Key, Rational>;

template <class Key>
void axpy(SparseVector<Key>& y, const Rational& a, const SparseVector<Key>& x) {
    if (is_zero(a)) return;
    for (const auto& [k, v] : x) {
        auto [it, fresh] = y.try_emplace(k, a * v);
        if (!fresh) {
            it->second += a * v;
            if (is_zero(it->second)) y.erase(it);
        }
    }
}

// Exact incremental row echelon form. Each inserted vector carries a tag
// (a combination of caller-side labels); reduction reports the combination used.
template <class Key>
class RowReducer {
public:
    using Vec = SparseVector<Key>;
    using Tag = SparseVector<int>;

    // Returns true when the vector was independent of the previous rows.
    bool insert(Vec v, Tag tag) {
        reduce_in_place(v, tag);
        if (v.empty()) return false;
        auto it = v.begin();
        Key pivot = it->first;
        Rational inv = 1 / it->second;
        for (auto& [k, x] : v) x *= inv;
        for (auto& [k, x] : tag) x *= inv;
        rows_.emplace(pivot, Row{std::move(v), std::move(tag)});
        return true;
    }

    // v = remainder + sum(tag_i * row_i); returns {remainder, combination of labels}.
    std::pair<Vec, Tag> reduce(Vec v) const {
        Tag used;
        reduce_in_place(v, used, true);
        return {std::move(v), std::move(used)};
    }

    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        Vec v;
        Tag tag;
    };

    void reduce_in_place(Vec& v, Tag& tag, bool accumulate = false) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto r = rows_.find(it->first);
            if (r == rows_.end()) {
                ++it;
                continue;
            }
            Key k = it->first;
            Rational c = it->second;
            axpy(v, Rational(-c), r->second.v);
            if (accumulate) axpy(tag, c, r->second.tag);
            else axpy(tag, Rational(-c), r->second.tag);
            it = v.upper_bound(k);
        }
    }

    std::map<Key, Row> rows_;
};

} // namespace qpq
