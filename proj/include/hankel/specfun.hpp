#pragma once

// Special functions needed by the finite Hankel transform machinery:
// log-Gamma, Bessel J of real order >= -1/2, Jacobi polynomials P_k^{(alpha,0)}
// and the orthonormal basis T_{k,alpha}(x) = (-1)^k sqrt(2(2k+alpha+1))
// x^{alpha+1/2} P_k^{(alpha,0)}(1-2x^2) of L^2(0,1).

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hankel/errors.hpp"

namespace hankel {

/// Basis function label: order k >= 0 and Hankel order alpha > -1/2.
struct BasisIndex {
    int k;
    double alpha;

    BasisIndex(int k_, double alpha_) : k(k_), alpha(alpha_) {
        if (k < 0) throw DomainError("BasisIndex: k must be non-negative");
        if (!(alpha > -0.5)) throw DomainError("BasisIndex: alpha must exceed -1/2");
    }
};

inline double log_gamma(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) throw DomainError("log_gamma: argument must be positive and finite");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

inline long double log_gamma(long double x) {
    if (!std::isfinite(x) || !(x > 0.0L)) throw DomainError("log_gamma: argument must be positive and finite");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgammal_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

namespace detail {

// Ascending series only where its terms shrink from the first one on, so that
// cancellation costs at most a factor e; everything else goes to Miller.
template <class Real>
bool bessel_series_ok(Real nu, Real x) {
    return x <= 2 || x * x / 4 <= nu + 1;
}

template <class Real>
Real bessel_j_series(Real nu, Real x) {
    const Real z = x * x / 4;
    const Real log_pref = nu * std::log(x / 2) - log_gamma(nu + 1);
    if (log_pref < Real(-745)) return 0;
    Real term = 1;
    Real sum = 1;
    for (int k = 1; k < 1000; ++k) {
        term *= -z / (k * (nu + k));
        sum += term;
        if (k * (nu + k) > z && std::abs(term) <= std::numeric_limits<Real>::epsilon() / 16 * std::abs(sum)) break;
    }
    return std::exp(log_pref) * sum;
}

// Miller backward recurrence over the orders frac(nu0) + m, normalised with the
// Neumann-type identity
//   (x/2)^v / Gamma(v+1) = J_v(x) + sum_{k>=1} (v+2k) Gamma(v+k)/(k! Gamma(v+1)) J_{v+2k}(x),
// v = frac(nu0) in [0,1). Writes J_{nu0+j}(x) into out[j].
template <class Real>
void bessel_j_miller(Real nu0, Real x, std::span<Real> out) {
    const int m_lo = static_cast<int>(std::floor(nu0));
    const Real base = nu0 - m_lo;
    const Real top = nu0 + static_cast<Real>(out.size()) - 1;
    const int m_start = static_cast<int>(std::ceil(std::max(top, x) - base + 10 * std::cbrt(x) + 30));
    const int m_stop = std::min(m_lo, 0);
    const int m_hi = m_lo + static_cast<int>(out.size()) - 1;

    std::vector<Real> weight(static_cast<std::size_t>(m_start / 2 + 2));
    weight[0] = 1;
    Real h = 1;
    for (std::size_t k = 1; k < weight.size(); ++k) {
        if (k > 1) h *= (base + static_cast<Real>(k) - 1) / static_cast<Real>(k);
        weight[k] = (base + 2 * static_cast<Real>(k)) * h;
    }

    const Real big = 1e200;
    Real j_next = 0;           // order m+1
    Real j_cur = Real(1e-30);  // order m
    Real norm = 0;
    for (int m = m_start; m >= m_stop; --m) {
        if (m >= m_lo && m <= m_hi) out[static_cast<std::size_t>(m - m_lo)] = j_cur;
        if (m >= 0 && m % 2 == 0) norm += weight[static_cast<std::size_t>(m / 2)] * j_cur;
        const Real j_prev = (2 * (base + m) / x) * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if (std::abs(j_cur) > big) {
            j_cur /= big;
            j_next /= big;
            norm /= big;
            for (int i = std::max(m, m_lo); i <= m_hi; ++i) out[static_cast<std::size_t>(i - m_lo)] /= big;
        }
    }
    const Real lhs = std::exp(base * std::log(x / 2) - log_gamma(base + 1));
    const Real scale = lhs / norm;
    for (Real& v : out) v *= scale;
}

template <class Real>
void check_bessel_args(Real nu, Real x) {
    if (!std::isfinite(nu) || !std::isfinite(x)) throw DomainError("bessel_j: non-finite argument");
    if (nu < -0.5) throw DomainError("bessel_j: order must be >= -1/2");
    if (x < 0.0) throw DomainError("bessel_j: argument must be non-negative");
}

inline double bessel_j_at_zero(double nu) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

} // namespace detail

/// J_nu(x) for real nu >= -1/2 and x >= 0.
inline double bessel_j(double nu, double x) {
    detail::check_bessel_args(nu, x);
    if (x == 0.0) return detail::bessel_j_at_zero(nu);
    if (detail::bessel_series_ok(nu, x)) return detail::bessel_j_series(nu, x);
    double v = 0.0;
    detail::bessel_j_miller(nu, x, std::span<double>(&v, 1));
    return v;
}

/// J_nu(x) in extended precision, for verification sums that cancel heavily.
inline long double bessel_j_extended(long double nu, long double x) {
    detail::check_bessel_args(nu, x);
    if (x == 0.0L) return detail::bessel_j_at_zero(static_cast<double>(nu));
    if (detail::bessel_series_ok(nu, x)) return detail::bessel_j_series(nu, x);
    long double v = 0.0L;
    detail::bessel_j_miller(nu, x, std::span<long double>(&v, 1));
    return v;
}

/// J_{nu0+j}(x) for j = 0..count-1. Orders far above x are handled by backward
/// recurrence, so this is safe for count in the hundreds.
inline std::vector<double> bessel_j_sequence(double nu0, int count, double x) {
    if (count < 1) throw DomainError("bessel_j_sequence: count must be positive");
    detail::check_bessel_args(nu0, x);
    std::vector<double> out(static_cast<std::size_t>(count));
    if (x == 0.0) {
        for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = detail::bessel_j_at_zero(nu0 + j);
    } else if (detail::bessel_series_ok(nu0, x)) {
        for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = detail::bessel_j_series(nu0 + j, x);
    } else {
        detail::bessel_j_miller(nu0, x, std::span<double>(out));
    }
    return out;
}

/// J_{l+1/2}(x) from the elementary closed forms (upward recurrence, stable
/// for l < x); falls back to the series near the origin.
inline double bessel_j_half_integer(int l, double x) {
    if (l < -1) throw DomainError("bessel_j_half_integer: order must be >= -1/2");
    if (x < 0.0 || !std::isfinite(x)) throw DomainError("bessel_j_half_integer: bad argument");
    if (x < std::max(4.0, 2.0 * l)) return bessel_j(l + 0.5, x);
    const double pref = std::sqrt(2.0 / (std::numbers::pi * x));
    double jm = pref * std::cos(x); // order -1/2
    double j = pref * std::sin(x);  // order  1/2
    if (l == -1) return jm;
    for (int i = 0; i < l; ++i) {
        const double jp = (2.0 * (i + 0.5) / x) * j - jm;
        jm = j;
        j = jp;
    }
    return j;
}

/// P_k^{(alpha,0)}(t) by the three-term recurrence, alpha > -1, |t| <= 1.
inline double jacobi_p(int k, double alpha, double t) {
    if (k < 0) throw DomainError("jacobi_p: degree must be non-negative");
    if (!(alpha > -1.0)) throw DomainError("jacobi_p: alpha must exceed -1");
    if (!(std::abs(t) <= 1.0 + 1e-12)) throw DomainError("jacobi_p: t must lie in [-1,1]");
    if (k == 0) return 1.0;
    double pm = 1.0;
    double p = 0.5 * ((alpha + 2.0) * t + alpha);
    for (int n = 2; n <= k; ++n) {
        const double s = 2.0 * n + alpha;
        const double a1 = 2.0 * n * (n + alpha) * (s - 2.0);
        const double a2 = (s - 1.0) * (s * (s - 2.0) * t + alpha * alpha);
        const double a3 = 2.0 * (n + alpha - 1.0) * (n - 1.0) * s;
        const double pn = (a2 * p - a3 * pm) / a1;
        pm = p;
        p = pn;
    }
    return p;
}

/// P_0..P_{out.size()-1} at t in one pass.
inline void jacobi_p_all(double alpha, double t, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = 0.5 * ((alpha + 2.0) * t + alpha);
    for (std::size_t i = 2; i < out.size(); ++i) {
        const double n = static_cast<double>(i);
        const double s = 2.0 * n + alpha;
        const double a1 = 2.0 * n * (n + alpha) * (s - 2.0);
        const double a2 = (s - 1.0) * (s * (s - 2.0) * t + alpha * alpha);
        const double a3 = 2.0 * (n + alpha - 1.0) * (n - 1.0) * s;
        out[i] = (a2 * out[i - 1] - a3 * out[i - 2]) / a1;
    }
}

/// sqrt(2(2k+alpha+1)), the value of T_{k,alpha} at x = 1.
inline double basis_scale(int k, double alpha) { return std::sqrt(2.0 * (2.0 * k + alpha + 1.0)); }

/// x^{alpha+1/2} with the x = 0 limit.
inline double power_alpha_half(double x, double alpha) {
    if (x == 0.0) return 0.0;
    return std::exp((alpha + 0.5) * std::log(x));
}

inline double t_basis(const BasisIndex& idx, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("t_basis: x must lie in [0,1]");
    const double sign = (idx.k % 2 == 0) ? 1.0 : -1.0;
    return sign * basis_scale(idx.k, idx.alpha) * power_alpha_half(x, idx.alpha) *
           jacobi_p(idx.k, idx.alpha, 1.0 - 2.0 * x * x);
}

} // namespace hankel
