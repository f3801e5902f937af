#pragma once

#include <gmpxx.h>

#include <string>

#include "coverlab/numeric.hpp"

namespace coverlab {

// Exact rational arithmetic everywhere a verdict depends on an inequality;
// doubles are for display only.
using Rational = mpq_class;

inline Rational make_rational(i64 num, i64 den) {
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline double to_double(const Rational& q) {
    return q.get_d();
}

} // namespace coverlab
