#pragma once

#include <gmpxx.h>

#include <string>

namespace qpq {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational sign_rat(int s) { return Rational(s < 0 ? -1 : 1); }

} // namespace qpq
