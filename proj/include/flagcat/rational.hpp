#pragma once

#include <gmpxx.h>
#include <string>

namespace flagcat {

// Exact rational scalar used everywhere; no floating point in the engine.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational rat(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string rat_str(const Rational& r) { return r.get_str(); }

} // namespace flagcat
