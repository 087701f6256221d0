#pragma once

// Independent reference computations: Nystrom discretisations of Q_c^alpha and
// of the sinc kernel, and direct quadrature of the finite Hankel transform.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "hankel/errors.hpp"
#include "hankel/quad.hpp"
#include "hankel/specfun.hpp"

namespace hankel {

enum class KernelKind { hankel_q, sinc };

struct KernelSpec {
    KernelKind kind = KernelKind::hankel_q;
    double alpha = 0.0;
    double c = 1.0;

    KernelSpec(KernelKind kind_, double alpha_, double c_) : kind(kind_), alpha(alpha_), c(c_) {
        if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("KernelSpec: c must be positive");
        if (kind == KernelKind::hankel_q && !(alpha > -0.5)) throw DomainError("KernelSpec: alpha must exceed -1/2");
    }
};

/// Eigenvalues plus a flag that is cleared when npts < 4m.
struct NystromResult {
    std::vector<double> values; // descending
    bool converged = true;
};

namespace detail {

// G_alpha(x,x) = (x/2)(J_a^2 - J_{a+1} J_{a-1}), with J_{a-1} eliminated by the
// recurrence so that orders stay >= -1/2.
inline double kernel_g_diagonal(double alpha, double x, double ja, double ja1) {
    if (x == 0.0) return 0.0;
    return 0.5 * x * (ja * ja + ja1 * ja1) - alpha * ja * ja1;
}

inline double kernel_g_closed(double x, double y, double jax, double ja1x, double jay, double ja1y) {
    return std::sqrt(x * y) * (x * ja1x * jay - y * ja1y * jax) / ((x - y) * (x + y));
}

inline bool kernel_g_near_diagonal(double x, double y) {
    return std::abs(x - y) <= 1e-4 * std::min(1.0, std::max(x, y));
}

// Near the diagonal the closed form cancels. G(m+h, m-h) is even in h, so it is
// interpolated linearly in h^2 between h = 0 and h = H, where the closed form
// still has ~14 digits.
inline double kernel_g_interpolated(double alpha, double x, double y) {
    const double m = 0.5 * (x + y);
    const double h = 0.5 * std::abs(x - y);
    const double jam = bessel_j(alpha, m);
    const double ja1m = bessel_j(alpha + 1.0, m);
    const double g0 = kernel_g_diagonal(alpha, m, jam, ja1m);
    if (h == 0.0) return g0;
    const double H = 1e-2 * std::min(1.0, m);
    const double xp = m + H;
    const double xm = m - H;
    const double gH =
        kernel_g_closed(xp, xm, bessel_j(alpha, xp), bessel_j(alpha + 1.0, xp), bessel_j(alpha, xm), bessel_j(alpha + 1.0, xm));
    const double t = (h / H) * (h / H);
    return g0 + t * (gH - g0);
}

inline NystromResult top_eigenvalues(const Eigen::MatrixXd& a, int m, bool converged) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ResourceError("nystrom_eigs: dense eigensolver failed");
    NystromResult r;
    r.converged = converged;
    const auto& ev = es.eigenvalues(); // ascending
    const int n = static_cast<int>(ev.size());
    for (int i = 0; i < std::min(m, n); ++i) r.values.push_back(ev(n - 1 - i));
    return r;
}

inline void check_nystrom_args(int m, int npts) {
    if (m < 1) throw DomainError("nystrom_eigs: m must be positive");
    if (npts < 1) throw DomainError("nystrom_eigs: npts must be positive");
}

} // namespace detail

/// G_alpha(x,y) = int_0^1 sqrt(xy) J_a(xt) J_a(yt) t dt.
inline double kernel_g(double alpha, double x, double y) {
    if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("kernel_g: arguments must be non-negative");
    if (!(alpha > -0.5)) throw DomainError("kernel_g: alpha must exceed -1/2");
    if (x == 0.0 || y == 0.0) return 0.0;
    if (x == y) return detail::kernel_g_diagonal(alpha, x, bessel_j(alpha, x), bessel_j(alpha + 1.0, x));
    if (x < y) std::swap(x, y);
    if (detail::kernel_g_near_diagonal(x, y)) return detail::kernel_g_interpolated(alpha, x, y);
    return detail::kernel_g_closed(x, y, bessel_j(alpha, x), bessel_j(alpha + 1.0, x), bessel_j(alpha, y),
                                   bessel_j(alpha + 1.0, y));
}

/// Symmetrised Nystrom matrix of the Hankel kernel sqrt(cxy) J_a(cxy) on the
/// squared Gauss-Legendre rule. Its eigenvalues are the mu_n.
inline Eigen::MatrixXd hankel_nystrom_matrix(double alpha, double c, int npts) {
    const QuadratureRule rule = gauss_legendre_squared(npts);
    const auto n = static_cast<Eigen::Index>(npts);
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = rule.nodes[static_cast<std::size_t>(i)];
        const double wi = std::sqrt(rule.weights[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double xj = rule.nodes[static_cast<std::size_t>(j)];
            const double wj = std::sqrt(rule.weights[static_cast<std::size_t>(j)]);
            const double z = c * xi * xj;
            const double v = wi * wj * std::sqrt(z) * bessel_j(alpha, z);
            b(i, j) = v;
            b(j, i) = v;
        }
    }
    return b;
}

/// Symmetrised Nystrom matrix of c G_a(cx, cy) (the kernel of Q_c^alpha).
inline Eigen::MatrixXd q_kernel_nystrom_matrix(double alpha, double c, int npts) {
    const QuadratureRule rule = gauss_legendre_squared(npts);
    const auto n = static_cast<std::size_t>(npts);
    std::vector<double> x(n), sw(n), ja(n), ja1(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = c * rule.nodes[i];
        sw[i] = std::sqrt(rule.weights[i]);
        ja[i] = bessel_j(alpha, x[i]);
        ja1[i] = bessel_j(alpha + 1.0, x[i]);
    }
    Eigen::MatrixXd q(npts, npts);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double g;
            if (i == j) g = detail::kernel_g_diagonal(alpha, x[i], ja[i], ja1[i]);
            else if (detail::kernel_g_near_diagonal(x[i], x[j])) g = kernel_g(alpha, x[i], x[j]);
            else g = detail::kernel_g_closed(x[i], x[j], ja[i], ja1[i], ja[j], ja1[j]);
            const double v = c * sw[i] * sw[j] * g;
            q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            q(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    return q;
}

/// sin c(x-y) / (pi (x-y)) on [-1,1], symmetrised on Gauss-Legendre nodes.
inline Eigen::MatrixXd sinc_nystrom_matrix(double c, int npts) {
    const QuadratureRule rule = gauss_legendre(npts, -1.0, 1.0);
    Eigen::MatrixXd s(npts, npts);
    for (int i = 0; i < npts; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double d = rule.nodes[static_cast<std::size_t>(i)] - rule.nodes[static_cast<std::size_t>(j)];
            const double k = (std::abs(c * d) < 1e-8) ? c / std::numbers::pi : std::sin(c * d) / (std::numbers::pi * d);
            const double v = std::sqrt(rule.weights[static_cast<std::size_t>(i)] * rule.weights[static_cast<std::size_t>(j)]) * k;
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

/// The m largest eigenvalues. For hankel_q these are lambda_n = c mu_n^2,
/// obtained from the Hankel kernel itself: squaring after the dense solve keeps
/// relative accuracy down to lambda ~ 1e-20, where a Nystrom matrix of Q
/// would be limited to absolute accuracy ~ 1e-16.
inline NystromResult nystrom_eigs(const KernelSpec& spec, int m, int npts) {
    detail::check_nystrom_args(m, npts);
    const bool converged = npts >= 4 * m;
    if (spec.kind == KernelKind::sinc) return detail::top_eigenvalues(sinc_nystrom_matrix(spec.c, npts), m, converged);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hankel_nystrom_matrix(spec.alpha, spec.c, npts), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ResourceError("nystrom_eigs: dense eigensolver failed");
    std::vector<double> lam(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) lam[static_cast<std::size_t>(i)] = spec.c * es.eigenvalues()(i) * es.eigenvalues()(i);
    std::sort(lam.begin(), lam.end(), std::greater<>());
    lam.resize(static_cast<std::size_t>(std::min(m, npts)));
    return {std::move(lam), converged};
}

/// Eigenvalues of Q_c^alpha from the G kernel directly. Absolute accuracy only
/// (about 1e-16), so useful for the leading part of the spectrum.
inline NystromResult nystrom_eigs_q_kernel(double alpha, double c, int m, int npts) {
    KernelSpec spec(KernelKind::hankel_q, alpha, c);
    detail::check_nystrom_args(m, npts);
    return detail::top_eigenvalues(q_kernel_nystrom_matrix(spec.alpha, spec.c, npts), m, npts >= 4 * m);
}

/// c int_0^1 G_a(cx, cx) dx = trace of Q_c^alpha.
inline double q_trace(double alpha, double c, int npts = 800) {
    const QuadratureRule rule = gauss_legendre(npts, 0.0, 1.0);
    return c * integrate(rule, [&](double x) {
               const double z = c * x;
               return detail::kernel_g_diagonal(alpha, z, bessel_j(alpha, z), bessel_j(alpha + 1.0, z));
           });
}

/// int_0^1 sqrt(ctx) J_a(ctx) f(t) dt by 400-point Gauss-Legendre.
template <class F>
double apply_finite_hankel(double alpha, double c, F&& f, double x) {
    if (!(alpha > -0.5)) throw DomainError("apply_finite_hankel: alpha must exceed -1/2");
    if (!(x >= 0.0)) throw DomainError("apply_finite_hankel: x must be non-negative");
    static const QuadratureRule rule = gauss_legendre(400, 0.0, 1.0);
    return integrate(rule, [&](double t) {
        const double z = c * t * x;
        return std::sqrt(z) * bessel_j(alpha, z) * f(t);
    });
}

} // namespace hankel
