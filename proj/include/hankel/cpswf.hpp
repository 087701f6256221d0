#pragma once

// Circular prolate spheroidal wave functions (eigenfunctions of the finite
// Hankel transform) assembled from the Slepian tridiagonal scheme.

#include <algorithm>
#include <memory>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/quad.hpp"
#include "hankel/scalar.hpp"
#include "hankel/specfun.hpp"
#include "hankel/trieig.hpp"

namespace hankel {

/// Which closed form produced mu.
enum class MuMethod {
    boundary, ///< matching the inside and outside expansions at x = 1
    origin,   ///< matching the x^{alpha+1/2} behaviour at x = 0
};

/// One eigenpair of H_c^alpha. Normalised so that sum d_k^2 = 1 (equivalently
/// int_0^1 phi^2 = 1) with phi(1) > 0. Immutable after solve().
struct Cpswf {
    int n = 0;
    double alpha = 0.0;
    double c = 0.0;
    double chi = 0.0;
    std::vector<double> coeffs; // d_k, k = 0..K-1
    double mu = 0.0;
    double lambda = 0.0;     // c mu^2; may underflow to 0, log_lambda stays exact
    double log_lambda = 0.0; // log(c mu^2)
    double log_abs_mu = 0.0;
    double one_minus_lambda = 1.0; // 1 - lambda, relatively accurate also when lambda is close to 1
    MuMethod mu_method = MuMethod::boundary;
    double mu_condition = 1.0; // cancellation factor of the sum that gave mu
};

/// mu from a closed form, kept as log-magnitude and sign.
struct MuEstimate {
    double log_abs = 0.0;
    double sign = 1.0;
    double condition = 1.0; // sum |terms| / |sum|

    double value() const { return sign * std::exp(log_abs); }
};

namespace detail {

inline double log_sum_abs_ratio(double sum_abs, double sum) {
    return std::abs(sum) > 0.0 ? sum_abs / std::abs(sum) : std::numeric_limits<double>::infinity();
}

} // namespace detail

/// mu_{n,alpha}(c) = (1/sqrt c) [sum (-1)^k d_k s_k J_{2k+alpha+1}(c)] / [sum d_k s_k],
/// s_k = sqrt(2(2k+alpha+1)).
inline MuEstimate mu_boundary(std::span<const double> coeffs, double alpha, double c) {
    const int K = static_cast<int>(coeffs.size());
    const auto jv = bessel_j_sequence(alpha + 1.0, 2 * K - 1, c);
    double num = 0.0;
    double num_abs = 0.0;
    double den = 0.0;
    double den_abs = 0.0;
    for (int k = 0; k < K; ++k) {
        const double dk = coeffs[static_cast<std::size_t>(k)] * basis_scale(k, alpha);
        const double term = ((k % 2 == 0) ? dk : -dk) * jv[static_cast<std::size_t>(2 * k)];
        num += term;
        num_abs += std::abs(term);
        den += dk;
        den_abs += std::abs(dk);
    }
    if (den == 0.0) throw InternalError("compute_mu: phi(1) vanishes; sign convention violated");
    MuEstimate m;
    m.sign = ((num < 0.0) != (den < 0.0)) ? -1.0 : 1.0;
    m.log_abs = std::log(std::abs(num)) - std::log(std::abs(den)) - 0.5 * std::log(c);
    // phi(1) is itself a cancelling sum when lambda is close to 1
    m.condition = detail::log_sum_abs_ratio(num_abs, num) + detail::log_sum_abs_ratio(den_abs, den);
    return m;
}

/// mu from the small-x behaviour: H phi(x) ~ x^{alpha+1/2} c^{alpha+1/2}/(2^alpha Gamma(alpha+1)) <y^{alpha+1/2}, phi>,
/// phi(x) ~ x^{alpha+1/2} sum (-1)^k d_k s_k binom(k+alpha, k). Needs log|d_0|.
inline MuEstimate mu_origin(std::span<const double> coeffs, double log_abs_d0, bool d0_negative, double alpha, double c) {
    double lead = 0.0;
    double lead_abs = 0.0;
    double binom = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) binom *= (static_cast<double>(k) + alpha) / static_cast<double>(k);
        const double term = coeffs[k] * basis_scale(static_cast<int>(k), alpha) * binom;
        lead += (k % 2 == 0) ? term : -term;
        lead_abs += std::abs(term);
    }
    MuEstimate m;
    m.sign = (d0_negative != (lead < 0.0)) ? -1.0 : 1.0;
    m.log_abs = (alpha + 0.5) * std::log(c) - alpha * std::numbers::ln2 - log_gamma(alpha + 1.0) + log_abs_d0 -
                0.5 * std::log(2.0 * (alpha + 1.0)) - std::log(std::abs(lead));
    m.condition = detail::log_sum_abs_ratio(lead_abs, lead);
    return m;
}

/// mu per the boundary-matching formula, as a plain value.
inline double compute_mu(std::span<const double> coeffs, double alpha, double c) {
    return mu_boundary(coeffs, alpha, c).value();
}

/// Truncation size the solver starts from.
inline int initial_truncation(int n_max, double c) {
    return std::max(4 * (n_max + 1), static_cast<int>(std::ceil(1.5 * c))) + 40;
}

namespace detail {

inline bool tail_negligible(const std::vector<EigenPair>& pairs) {
    for (const auto& p : pairs) {
        const std::size_t K = p.vector.size();
        for (std::size_t k = K - std::min<std::size_t>(10, K); k < K; ++k)
            if (std::abs(p.vector[k]) >= 1e-15) return false;
    }
    return true;
}

inline Cpswf assemble(int n, double alpha, double c, EigenPair pair) {
    Cpswf f;
    f.n = n;
    f.alpha = alpha;
    f.c = c;
    f.chi = pair.value;
    f.coeffs = std::move(pair.vector);
    double at_one = 0.0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) at_one += f.coeffs[k] * basis_scale(static_cast<int>(k), alpha);
    if (at_one < 0.0)
        for (double& d : f.coeffs) d = -d;
    // signbit survives underflow of the head component to zero
    const bool d0_negative = std::signbit(f.coeffs[0]);

    const MuEstimate boundary = mu_boundary(f.coeffs, alpha, c);
    const MuEstimate origin = mu_origin(f.coeffs, pair.log_abs_head, d0_negative, alpha, c);
    const MuEstimate& best = (origin.condition < boundary.condition) ? origin : boundary;
    f.mu_method = (&best == &origin) ? MuMethod::origin : MuMethod::boundary;
    f.mu_condition = best.condition;
    f.log_abs_mu = best.log_abs;
    f.mu = best.value();
    f.log_lambda = std::log(c) + 2.0 * best.log_abs;
    f.lambda = std::exp(f.log_lambda);
    f.one_minus_lambda = -std::expm1(f.log_lambda);
    return f;
}

// 1 - lambda_n in quadruple precision via the origin formula. In double, lambda
// near 1 is only known to ~1e-16 absolute, which leaves log(lambda) and its
// c-derivative meaningless for the leading orders. NaN if the origin sum cancels.
inline double one_minus_lambda_quad(const BasicSymTridiagonal<quad>& t, int n, double chi, double alpha, double c) {
    quad value;
    const auto tv = refine_eigenpair(t, static_cast<std::size_t>(n), chi, value);
    const quad a = alpha;
    quad lead = 0;
    quad lead_abs = 0;
    quad binom = 1;
    for (std::size_t k = 0; k < tv.z.size(); ++k) {
        const quad kk = static_cast<double>(k);
        if (k > 0) binom *= (kk + a) / kk;
        const quad term = tv.z[k] * sqrtq(2 * (2 * kk + a + 1)) * binom;
        lead += (k % 2 == 0) ? term : -term;
        lead_abs += fabsq(term);
    }
    if (!(lead_abs < 1000 * fabsq(lead))) return std::numeric_limits<double>::quiet_NaN();
    const quad qc = c;
    const quad half = 0.5;
    const quad log_mu = (a + half) * logq(qc) - a * logq(quad(2)) - lgammaq(a + 1) + tv.log_head -
                        half * logq(2 * (a + 1)) - logq(fabsq(lead));
    return static_cast<double>(-expm1q(logq(qc) + 2 * log_mu));
}

// Replaces log lambda and mu of the leading orders (lambda > 1/2) by values
// derived from a quadruple-precision 1 - lambda.
inline void refine_leading_orders(std::vector<Cpswf>& family, int K) {
    std::unique_ptr<BasicSymTridiagonal<quad>> t;
    for (Cpswf& f : family) {
        if (!(f.log_lambda > -std::numbers::ln2)) continue;
        if (!t) t = std::make_unique<BasicSymTridiagonal<quad>>(build_matrix<quad>(f.alpha, f.c, K));
        const double oml = one_minus_lambda_quad(*t, f.n, f.chi, f.alpha, f.c);
        if (!(oml >= 0.0 && oml < 0.5)) continue;
        f.one_minus_lambda = oml;
        f.log_lambda = std::log1p(-oml);
        f.lambda = 1.0 - oml;
        f.log_abs_mu = 0.5 * (f.log_lambda - std::log(f.c));
        f.mu = std::copysign(std::exp(f.log_abs_mu), f.mu);
    }
}

} // namespace detail

/// CPSWFs of orders 0..n_max for H_c^alpha.
inline std::vector<Cpswf> solve(double alpha, double c, int n_max) {
    if (!(alpha > -0.5)) throw DomainError("solve: alpha must exceed -1/2");
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("solve: c must be positive");
    if (n_max < 0) throw DomainError("solve: n_max must be non-negative");
    constexpr int max_truncation = 200000;
    int K = initial_truncation(n_max, c);
    for (;;) {
        // Extended precision keeps the components of phi_n along the dominant
        // eigenfunctions small enough that H phi_n - mu_n phi_n stays at the
        // level of mu_n rather than eps * mu_0.
        const auto t = build_matrix<long double>(alpha, c, K);
        auto pairs = eig_smallest(t, n_max + 1);
        if (detail::tail_negligible(pairs)) {
            std::vector<Cpswf> out;
            out.reserve(pairs.size());
            for (int n = 0; n <= n_max; ++n)
                out.push_back(detail::assemble(n, alpha, c, std::move(pairs[static_cast<std::size_t>(n)])));
            detail::refine_leading_orders(out, K);
            return out;
        }
        const int next = static_cast<int>(std::ceil(1.5 * K));
        if (next > max_truncation) throw ResourceError("solve: truncation did not converge");
        K = next;
    }
}

/// Single order n.
inline Cpswf solve_one(double alpha, double c, int n) { return solve(alpha, c, n).back(); }

/// Inside value plus a truncation estimate from the trailing coefficients.
struct InsideValue {
    double value = 0.0;
    double truncation_bound = 0.0;
};

namespace detail {

template <class Real>
InsideValue eval_inside_sum(const Cpswf& f, Real x, Real& value) {
    InsideValue r;
    const std::size_t K = f.coeffs.size();
    value = 0;
    if (K == 0) return r;
    const Real alpha = f.alpha;
    const Real t = 1 - 2 * x * x;
    // P_k^{(alpha,0)} by recurrence, inlined to avoid a scratch allocation
    Real pm = 0;
    Real p = 1;
    Real sum = 0;
    double tail = 0.0;
    double binom = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
        if (k == 1) {
            pm = p;
            p = ((alpha + 2) * t + alpha) / 2;
        } else if (k >= 2) {
            const Real nn = static_cast<Real>(k);
            const Real s = 2 * nn + alpha;
            const Real a1 = 2 * nn * (nn + alpha) * (s - 2);
            const Real a2 = (s - 1) * (s * (s - 2) * t + alpha * alpha);
            const Real a3 = 2 * (nn + alpha - 1) * (nn - 1) * s;
            const Real pn = (a2 * p - a3 * pm) / a1;
            pm = p;
            p = pn;
        }
        if (k > 0) binom *= (static_cast<double>(k) + f.alpha) / static_cast<double>(k);
        const Real sk = std::sqrt(2 * (2 * static_cast<Real>(k) + alpha + 1));
        const Real term = f.coeffs[k] * sk * p;
        sum += (k % 2 == 0) ? term : -term;
        if (k + 10 >= K) tail += std::abs(f.coeffs[k]) * static_cast<double>(sk) * std::max(1.0, binom);
    }
    value = (x == 0 ? Real(0) : std::exp((alpha + Real(0.5)) * std::log(x))) * sum;
    r.value = static_cast<double>(value);
    r.truncation_bound = tail;
    return r;
}

} // namespace detail

inline InsideValue eval_inside_detailed(const Cpswf& f, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_inside: x must lie in [0,1]");
    double v;
    return detail::eval_inside_sum(f, x, v);
}

inline double eval_inside(const Cpswf& f, double x) { return eval_inside_detailed(f, x).value; }

/// phi(1) = sum d_k s_k
inline double value_at_one(const Cpswf& f) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) s += f.coeffs[k] * basis_scale(static_cast<int>(k), f.alpha);
    return s;
}

/// Analytic extension for x >= 1 through the Bessel series.
inline double eval_outside(const Cpswf& f, double x) {
    if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("eval_outside: x must be >= 1");
    if (f.log_abs_mu < std::log(1e-280)) throw UnderflowError("eval_outside: |mu| below 1e-280");
    const int K = static_cast<int>(f.coeffs.size());
    const double z = f.c * x;
    const auto jv = bessel_j_sequence(f.alpha + 1.0, 2 * K - 1, z);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
        const double term = f.coeffs[static_cast<std::size_t>(k)] * basis_scale(k, f.alpha) * jv[static_cast<std::size_t>(2 * k)];
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum / (f.mu * std::sqrt(z));
}

/// phi on [0, inf): inside expansion on [0,1], Bessel extension beyond.
inline double eval(const Cpswf& f, double x) { return x <= 1.0 ? eval_inside(f, x) : eval_outside(f, x); }

/// max over grid of |H_c^alpha phi(x) - mu phi(x)|, 400-point Gauss-Legendre in y.
/// The quadrature sum cancels down to mu phi(x), so it is formed in extended
/// precision; in double the Bessel rounding alone leaves a floor near 1e-15.
inline double residual_integral_equation(const Cpswf& f, std::span<const double> grid) {
    using Real = long double;
    if (grid.empty()) throw DomainError("residual_integral_equation: empty grid");
    std::vector<Real> y;
    std::vector<Real> w;
    gauss_legendre_extended(400, y, w);
    std::vector<Real> phi(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = (1 + y[i]) / 2;
        w[i] /= 2;
        detail::eval_inside_sum<Real>(f, y[i], phi[i]);
    }
    double worst = 0.0;
    for (double x : grid) {
        if (!(x >= 0.0 && x <= 1.0)) throw DomainError("residual_integral_equation: grid must lie in [0,1]");
        Real h = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const Real z = Real(f.c) * x * y[i];
            h += w[i] * std::sqrt(z) * bessel_j_extended(f.alpha, z) * phi[i];
        }
        Real own = 0;
        detail::eval_inside_sum<Real>(f, Real(x), own);
        worst = std::max(worst, static_cast<double>(std::abs(h - Real(f.mu) * own)));
    }
    return worst;
}

/// 2c int_0^1 x^2 phi^2 dx, the c-derivative of chi.
inline double chi_derivative(const Cpswf& f) {
    const QuadratureRule rule = gauss_legendre_squared(400);
    return 2.0 * f.c * integrate(rule, [&](double x) {
               const double v = eval_inside(f, x);
               return x * x * v * v;
           });
}

/// phi(1)^2 / c, the c-derivative of log lambda.
inline double log_lambda_derivative(const Cpswf& f) {
    const double p1 = value_at_one(f);
    return p1 * p1 / f.c;
}

} // namespace hankel
