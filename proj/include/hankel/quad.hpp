#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hankel/errors.hpp"

namespace hankel {

/// Nodes and weights of an interpolatory rule on [a, b]. Immutable once built.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;

    std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

// P_n(z) and P_{n-1}(z) by the three-term recurrence.
inline void legendre_pair(int n, long double z, long double& pn, long double& pn1) {
    long double p1 = 1.0L;
    long double p0 = 0.0L;
    for (int j = 1; j <= n; ++j) {
        const long double p2 = p0;
        p0 = p1;
        p1 = ((2 * j - 1) * z * p0 - (j - 1) * p2) / j;
    }
    pn = p1;
    pn1 = p0;
}

} // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1] in extended precision,
/// ascending. Newton iteration on P_n: the weight near x = +-1 amplifies node
/// error by 1/(1-x^2), which in double costs up to four digits at n = 400.
inline void gauss_legendre_extended(int n, std::vector<long double>& nodes, std::vector<long double>& weights) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    nodes.assign(static_cast<std::size_t>(n), 0.0L);
    weights.assign(static_cast<std::size_t>(n), 0.0L);
    const int m = (n + 1) / 2;
    constexpr long double pi = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < m; ++i) {
        long double z = (n % 2 == 1 && i == m - 1) ? 0.0L : std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double pn = 0.0L;
        long double pn1 = 0.0L;
        for (int it = 0; it < 100; ++it) {
            detail::legendre_pair(n, z, pn, pn1);
            const long double dp = n * (z * pn - pn1) / (z * z - 1);
            const long double dz = pn / dp;
            z -= dz;
            if (std::abs(dz) <= 4 * std::numeric_limits<long double>::epsilon()) break;
        }
        detail::legendre_pair(n, z, pn, pn1);
        const long double one_minus_z2 = (1 - z) * (1 + z);
        const long double dp = n * (pn1 - z * pn) / one_minus_z2;
        const long double w = 2 / (one_minus_z2 * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        nodes[lo] = -z;
        nodes[hi] = z;
        weights[lo] = w;
        weights[hi] = w;
    }
}

/// n-point Gauss-Legendre rule on [a, b].
inline QuadratureRule gauss_legendre(int n, double a, double b) {
    if (!(a < b)) throw DomainError("gauss_legendre: need a < b");
    std::vector<long double> z;
    std::vector<long double> w;
    gauss_legendre_extended(n, z, w);
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(z.size());
    rule.weights.resize(z.size());
    const long double mid = 0.5L * (static_cast<long double>(a) + b);
    const long double half = 0.5L * (static_cast<long double>(b) - a);
    for (std::size_t i = 0; i < z.size(); ++i) {
        rule.nodes[i] = static_cast<double>(mid + half * z[i]);
        rule.weights[i] = static_cast<double>(half * w[i]);
    }
    return rule;
}

/// Gauss-Legendre in u on [0,1] mapped through x = u^2 (weights 2u w).
/// Absorbs the x^{alpha+1/2} endpoint behaviour of the Hankel eigenfunctions.
inline QuadratureRule gauss_legendre_squared(int n) {
    QuadratureRule r = gauss_legendre(n, 0.0, 1.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double u = r.nodes[i];
        r.weights[i] *= 2.0 * u;
        r.nodes[i] = u * u;
    }
    return r;
}

/// Composite Gauss-Legendre over panels [breaks[i], breaks[i+1]].
inline QuadratureRule composite_gauss_legendre(int n_per_panel, std::span<const double> breaks) {
    if (breaks.size() < 2) throw DomainError("composite_gauss_legendre: need at least one panel");
    const QuadratureRule ref = gauss_legendre(n_per_panel, -1.0, 1.0);
    QuadratureRule r;
    r.a = breaks.front();
    r.b = breaks.back();
    r.nodes.reserve(ref.size() * (breaks.size() - 1));
    r.weights.reserve(ref.size() * (breaks.size() - 1));
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p];
        const double hi = breaks[p + 1];
        if (!(lo < hi)) throw DomainError("composite_gauss_legendre: breaks must increase");
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            r.nodes.push_back(mid + half * ref.nodes[i]);
            r.weights.push_back(half * ref.weights[i]);
        }
    }
    return r;
}

/// Equal panels of width at most h over [a, b].
inline QuadratureRule composite_gauss_legendre(int n_per_panel, double a, double b, double h) {
    if (!(a < b) || !(h > 0.0)) throw DomainError("composite_gauss_legendre: bad interval");
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / h));
    std::vector<double> breaks(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) breaks[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
    breaks.back() = b;
    return composite_gauss_legendre(n_per_panel, breaks);
}

/// sum_i w_i f(x_i). A NaN at any node is reported, not silently summed.
template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = f(rule.nodes[i]);
        if (std::isnan(v)) throw EvaluationError("integrate: NaN at node x = " + std::to_string(rule.nodes[i]));
        sum += rule.weights[i] * v;
    }
    return sum;
}

} // namespace hankel
