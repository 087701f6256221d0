#pragma once

// Approximation of (almost) Hankel band-limited functions by partial sums of
// CPSWF expansions, with the error budget eps + sqrt(lambda_N).

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hankel/bounds.hpp"
#include "hankel/cpswf.hpp"
#include "hankel/errors.hpp"
#include "hankel/quad.hpp"
#include "hankel/specfun.hpp"

namespace hankel {

enum class FunctionId { f1, f2, custom };

struct TestFunction {
    FunctionId id = FunctionId::custom;
    double alpha = 0.0;
    std::vector<double> params;
    std::function<double(double)> eval;
    std::function<double(double)> hankel_transform; // empty when unknown
    // eps such that the transform has L2 mass <= eps outside [0, c]; NaN if unknown
    std::function<double(double)> eps_omega;
    double norm_l2 = 0.0; // ||f||_{L2(0,inf)}
};

namespace detail {

// J_nu for half-integer nu in closed form when possible (no large-argument
// recurrence cost), otherwise the general evaluator.
inline double bessel_j_fast(double nu, double x) {
    const double l = nu - 0.5;
    if (l >= 0.0 && l == std::floor(l) && l < 20.0 && x > 0.0) return bessel_j_half_integer(static_cast<int>(l), x);
    return bessel_j(nu, x);
}

// int_X^inf cos(k x - phi) / x dx for k > 0 and k X large, from the asymptotic
// series of int_z^inf e^{it}/t dt = i e^{iz}/z sum m! (-i/z)^m.
inline double cos_over_x_tail(double k, double phi, double X) {
    if (k < 0.0) {
        k = -k;
        phi = -phi;
    }
    const double z = k * X;
    std::complex<double> term(1.0, 0.0);
    std::complex<double> sum = term;
    for (int m = 1; m < 8; ++m) {
        const std::complex<double> next = term * std::complex<double>(0.0, -static_cast<double>(m) / z);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
    }
    const std::complex<double> I = std::complex<double>(0.0, 1.0) * std::polar(1.0, z) / z * sum;
    return (std::polar(1.0, -phi) * I).real();
}

// int_X^inf f^2 for f = x^{-1/2} J_nu(a x), leading asymptotics.
inline double f1_tail_sq(double nu, double a, double X) {
    const double theta = nu * std::numbers::pi / 2 + std::numbers::pi / 4;
    // (2/(pi a x^2)) cos^2(a x - theta) = (1/(pi a x^2)) (1 + cos(2 a x - 2 theta))
    const double mean = 1.0 / (std::numbers::pi * a * X);
    const double osc = -std::sin(2 * a * X - 2 * theta) / (2 * std::numbers::pi * a * a * X * X);
    return mean + osc;
}

} // namespace detail

/// ||f||_{L2(0,inf)} by composite Gauss-Legendre to x_max plus a tail estimate.
inline double l2_norm_numeric(const std::function<double(double)>& f, double x_max, double tail_sq, double panel = 0.25) {
    const QuadratureRule r = composite_gauss_legendre(20, 0.0, x_max, panel);
    return std::sqrt(integrate(r, [&](double x) {
                         const double v = f(x);
                         return v * v;
                     }) +
                     tail_sq);
}

/// f1(x) = J_{alpha+1}(a x)/sqrt(x). Its transform is a^{-alpha-1} s^{alpha+1/2} on [0, a], zero beyond.
inline TestFunction make_f1(double alpha = 1.5, double a = 20.0) {
    if (!(alpha > -0.5) || !(a > 0.0)) throw DomainError("make_f1: need alpha > -1/2 and a > 0");
    TestFunction f;
    f.id = FunctionId::f1;
    f.alpha = alpha;
    f.params = {a};
    f.eval = [alpha, a](double x) {
        if (x == 0.0) return 0.0;
        return detail::bessel_j_fast(alpha + 1.0, a * x) / std::sqrt(x);
    };
    f.hankel_transform = [alpha, a](double s) {
        if (s > a) return 0.0;
        return std::pow(a, -alpha - 1.0) * std::pow(s, alpha + 0.5);
    };
    f.eps_omega = [a](double c) { return c >= a ? 0.0 : std::numeric_limits<double>::quiet_NaN(); };
    const double x_max = 100.0;
    f.norm_l2 = l2_norm_numeric(f.eval, x_max, detail::f1_tail_sq(alpha + 1.0, a, x_max));
    return f;
}

namespace detail {

inline double f2_prefactor(double alpha2) {
    return std::exp(alpha2 * std::numbers::ln2 + log_gamma(alpha2 + 0.5)) / std::sqrt(std::numbers::pi);
}

} // namespace detail

/// Transform of f2: (2^a Gamma(a+1/2)/sqrt(pi)) s^{a+1/2} / (1+s^2)^{a+1/2}.
inline double f2_transform(double alpha2, double s) {
    if (s == 0.0) return 0.0;
    return detail::f2_prefactor(alpha2) * std::exp((alpha2 + 0.5) * (std::log(s) - std::log1p(s * s)));
}

/// (int_c^inf (H f2)^2 ds)^{1/2} by quadrature, s = c/v^2.
inline double epsilon_omega_f2(double alpha2, double c) {
    if (!(c > 0.0)) throw DomainError("epsilon_omega_f2: c must be positive");
    if (!(alpha2 > 0.0)) throw DomainError("epsilon_omega_f2: alpha2 must be positive");
    const double pref = detail::f2_prefactor(alpha2);
    const QuadratureRule r = gauss_legendre(200, 0.0, 1.0);
    // s^{2a+1}/(1+s^2)^{2a+1} ds with s = c/u, u = v^2:
    // c^{2a+2} u^{2a-1} / (u^2+c^2)^{2a+1} du, du = 2v dv
    const double tail = integrate(r, [&](double v) {
        const double u = v * v;
        const double p = 2 * alpha2 + 1;
        return 2 * v * std::exp((p + 1) * std::log(c) + (p - 2) * std::log(u) - p * std::log(u * u + c * c));
    });
    return pref * std::sqrt(tail);
}

/// Closed form of the above for alpha2 = 1: sqrt(1+2c^2) / (2(1+c^2)).
inline double epsilon_omega_f2_closed(double c) { return std::sqrt(1.0 + 2.0 * c * c) / (2.0 * (1.0 + c * c)); }

/// The same quantity with the squared denominator (1+c^2)^2; far too small, kept for reporting.
inline double epsilon_omega_f2_misprint(double alpha2, double c) {
    return detail::f2_prefactor(alpha2) * std::sqrt(1.0 + 2.0 * c * c) / (2.0 * (1.0 + c * c) * (1.0 + c * c));
}

/// f2(x) = x^{alpha2 - 1/2} e^{-x}.
inline TestFunction make_f2(double alpha2 = 1.0) {
    if (!(alpha2 > 0.0)) throw DomainError("make_f2: alpha2 must be positive");
    TestFunction f;
    f.id = FunctionId::f2;
    f.alpha = alpha2;
    f.eval = [alpha2](double x) { return x == 0.0 ? 0.0 : std::exp((alpha2 - 0.5) * std::log(x) - x); };
    f.hankel_transform = [alpha2](double s) { return f2_transform(alpha2, s); };
    f.eps_omega = [alpha2](double c) { return epsilon_omega_f2(alpha2, c); };
    // integrand x^{2 alpha2 - 1} e^{-2x}; past x = 100 it is below e^{-190}
    f.norm_l2 = l2_norm_numeric(f.eval, 100.0, 0.0, 1.0);
    return f;
}

struct ErrorSample {
    double x = 0.0;
    double f = 0.0;
    double partial = 0.0; // S_N f(x)
    double error = 0.0;   // f - S_N f
};

struct ApproxResult {
    int N = 0;
    std::vector<double> coeffs; // <f, phi_n>, n = 0..N
    double error_l2 = 0.0;      // ||f - S_N f||_{L2(0,1)}
    std::vector<ErrorSample> error_grid;
    double budget = 0.0;   // eps + sqrt(lambda_N)
    double eps_omega = 0.0;
    double sqrt_lambda = 0.0; // sqrt(lambda_N)
    double norm_l2 = 0.0;  // ||f||_{L2(0,inf)}

    /// (eps + sqrt(lambda_N)) ||f||
    double bound() const { return budget * norm_l2; }
    /// eps + sqrt(lambda_N) ||f||. eps is an absolute tail norm, so this is the
    /// form that survives rescaling f; it differs from bound() when ||f|| != 1.
    double bound_absolute_eps() const { return eps_omega_or_zero() + sqrt_lambda * norm_l2; }
    double eps_omega_or_zero() const { return std::isnan(eps_omega) ? 0.0 : eps_omega; }
};

/// eps + sqrt(lambda_N); lambda taken from its logarithm so deep orders do not underflow.
inline double prop4_budget(int N, std::span<const Cpswf> basis, double eps_omega) {
    if (N < 0 || static_cast<std::size_t>(N) >= basis.size()) throw DomainError("prop4_budget: basis does not reach order N");
    return eps_omega + std::exp(0.5 * basis[static_cast<std::size_t>(N)].log_lambda);
}

/// Orthogonal projection of f onto span{phi_0..phi_N} over [0,1].
inline ApproxResult project(const TestFunction& f, std::span<const Cpswf> basis, int N, int grid_points = 201) {
    if (N < 0 || static_cast<std::size_t>(N) >= basis.size()) throw DomainError("project: basis does not reach order N");
    if (grid_points < 2) throw DomainError("project: need at least two grid points");
    for (int n = 0; n <= N; ++n) {
        const Cpswf& p = basis[static_cast<std::size_t>(n)];
        if (p.n != n) throw DomainError("project: basis must hold orders 0..N in sequence");
        if (p.alpha != f.alpha) throw DomainError("project: alpha of f and basis differ");
        if (p.c != basis[0].c) throw DomainError("project: basis mixes bandwidths");
    }
    const QuadratureRule rule = gauss_legendre_squared(400);
    const std::size_t m = rule.size();
    std::vector<double> fv(m);
    for (std::size_t i = 0; i < m; ++i) fv[i] = f.eval(rule.nodes[i]);
    std::vector<std::vector<double>> phi(static_cast<std::size_t>(N) + 1, std::vector<double>(m));
    ApproxResult r;
    r.N = N;
    r.coeffs.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        auto& pv = phi[static_cast<std::size_t>(n)];
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            pv[i] = eval_inside(basis[static_cast<std::size_t>(n)], rule.nodes[i]);
            s += rule.weights[i] * fv[i] * pv[i];
        }
        r.coeffs[static_cast<std::size_t>(n)] = s;
    }
    double err2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double sn = 0.0;
        for (int n = 0; n <= N; ++n) sn += r.coeffs[static_cast<std::size_t>(n)] * phi[static_cast<std::size_t>(n)][i];
        const double e = fv[i] - sn;
        err2 += rule.weights[i] * e * e;
    }
    r.error_l2 = std::sqrt(err2);

    r.error_grid.reserve(static_cast<std::size_t>(grid_points));
    for (int j = 0; j < grid_points; ++j) {
        ErrorSample e;
        e.x = static_cast<double>(j) / (grid_points - 1);
        e.f = f.eval(e.x);
        for (int n = 0; n <= N; ++n) e.partial += r.coeffs[static_cast<std::size_t>(n)] * eval_inside(basis[static_cast<std::size_t>(n)], e.x);
        e.error = e.f - e.partial;
        r.error_grid.push_back(e);
    }
    r.eps_omega = f.eps_omega ? f.eps_omega(basis[0].c) : std::numeric_limits<double>::quiet_NaN();
    r.norm_l2 = f.norm_l2;
    r.sqrt_lambda = std::exp(0.5 * basis[static_cast<std::size_t>(N)].log_lambda);
    r.budget = prop4_budget(N, basis, r.eps_omega_or_zero());
    return r;
}

/// error_l2 against (eps + sqrt(lambda_N)) ||f|| ("prop4") and against
/// eps + sqrt(lambda_N) ||f|| ("prop4_abs").
inline std::vector<BoundReport> check_prop4(const ApproxResult& r, double alpha, double c) {
    BoundReport b;
    b.alpha = alpha;
    b.c = c;
    b.n = r.N;
    b.hypotheses_met = !std::isnan(r.eps_omega);
    b.measured = r.error_l2;
    BoundReport lit = b;
    lit.claim_id = "prop4";
    lit.bound = r.bound();
    BoundReport abs = b;
    abs.claim_id = "prop4_abs";
    abs.bound = r.bound_absolute_eps();
    return {detail::finish(lit), detail::finish(abs)};
}

/// Numerically transforms f1 on a grid in (0, 1.5a] and compares with its
/// closed form. The Hankel integral runs to x_max; beyond it the leading
/// Bessel asymptotics give the tail in closed form. Grid points within a/40
/// of the jump at s = a are skipped (the integral converges there like 1/|s-a|).
inline BoundReport verify_f1_bandlimit(double c, double alpha = 1.5, double a = 20.0, int grid = 30, double x_max = 2000.0) {
    if (!(c > 0.0)) throw DomainError("verify_f1_bandlimit: c must be positive");
    const TestFunction f = make_f1(alpha, a);
    const QuadratureRule r = composite_gauss_legendre(20, 0.0, x_max, 0.25);
    const double th0 = alpha * std::numbers::pi / 2 + std::numbers::pi / 4;
    const double th1 = (alpha + 1.0) * std::numbers::pi / 2 + std::numbers::pi / 4;
    double worst = 0.0;
    for (int j = 1; j <= grid; ++j) {
        const double s = 1.5 * a * j / grid;
        if (std::abs(s - a) < a / 40) continue;
        const double body = integrate(r, [&](double x) {
            return detail::bessel_j_fast(alpha, s * x) * detail::bessel_j_fast(alpha + 1.0, a * x);
        });
        // J_alpha(sx) J_{alpha+1}(ax) ~ (1/(pi x sqrt(sa))) [cos((a-s)x - (th1-th0)) + cos((a+s)x - (th0+th1))]
        const double tail = (detail::cos_over_x_tail(a - s, th1 - th0, x_max) + detail::cos_over_x_tail(a + s, th0 + th1, x_max)) /
                            (std::numbers::pi * std::sqrt(s * a));
        const double numeric = std::sqrt(s) * (body + tail);
        worst = std::max(worst, std::abs(numeric - f.hankel_transform(s)));
    }
    BoundReport b;
    b.claim_id = "f1_bandlimit";
    b.alpha = alpha;
    b.c = c;
    b.n = -1;
    b.hypotheses_met = c >= a;
    b.measured = worst;
    b.bound = 1e-6;
    return detail::finish(b);
}

} // namespace hankel
