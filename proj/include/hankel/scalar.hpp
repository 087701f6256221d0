#pragma once

// Overloads that let the eigensolver templates run in double, long double or
// __float128 alike (libquadmath supplies the quad-precision functions).

#include <cmath>
#include <limits>

#include <quadmath.h>

namespace hankel {

using quad = __float128;

namespace detail {

inline double mabs(double x) { return std::fabs(x); }
inline long double mabs(long double x) { return std::fabs(x); }
inline quad mabs(quad x) { return fabsq(x); }

inline double msqrt(double x) { return std::sqrt(x); }
inline long double msqrt(long double x) { return std::sqrt(x); }
inline quad msqrt(quad x) { return sqrtq(x); }

inline double mlog(double x) { return std::log(x); }
inline long double mlog(long double x) { return std::log(x); }
inline quad mlog(quad x) { return logq(x); }

template <class Real>
struct scalar_limits {
    static Real min() { return std::numeric_limits<Real>::min(); }
    static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static Real infinity() { return std::numeric_limits<Real>::infinity(); }
};

// The FLT128_* macros use the Q literal suffix, unavailable in strict mode.
template <>
struct scalar_limits<quad> {
    static quad min() { return ldexpq(quad(1), -16382); }
    static quad epsilon() { return ldexpq(quad(1), -112); }
    static quad infinity() { return __builtin_huge_valq(); }
};

} // namespace detail
} // namespace hankel
