#pragma once

// Truncated Slepian matrix for the finite Hankel transform and a
// bisection / twisted-inverse-iteration eigensolver for its leading block.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hankel/errors.hpp"
#include "hankel/scalar.hpp"

namespace hankel {

/// Symmetric tridiagonal matrix: diag[k] = m_{k,k}, offdiag[k] = m_{k,k+1}.
template <class Real>
struct BasicSymTridiagonal {
    std::vector<Real> diag;
    std::vector<Real> offdiag;

    std::size_t order() const noexcept { return diag.size(); }

    /// max column sum of |M|
    Real norm1() const {
        Real n = 0;
        for (std::size_t k = 0; k < diag.size(); ++k) {
            Real s = detail::mabs(diag[k]);
            if (k > 0) s += detail::mabs(offdiag[k - 1]);
            if (k + 1 < diag.size()) s += detail::mabs(offdiag[k]);
            n = std::max(n, s);
        }
        return n;
    }
};

using SymTridiagonal = BasicSymTridiagonal<double>;

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector; // unit 2-norm
    // log|vector[0]|, kept separately because the head component of high-order
    // eigenvectors can fall below the double range.
    double log_abs_head = 0.0;
};

/// a_{k+1,alpha}: coefficient of the x^2 operator between basis k and k+1.
template <class Real = double>
Real slepian_a(int k, Real alpha) {
    const Real s = alpha + 2 * Real(k);
    return (k + Real(1)) * (alpha + k + 1) / ((s + 2) * detail::msqrt(s + 1) * detail::msqrt(s + 3));
}

/// b_{k,alpha}; the k = 0 term alpha^2/((alpha+2)alpha) is taken as alpha/(alpha+2),
/// which is its limit (and 0) at alpha = 0.
template <class Real = double>
Real slepian_b(int k, Real alpha) {
    const Real ratio = (k == 0) ? alpha / (alpha + 2) : alpha * alpha / ((alpha + 2 * Real(k) + 2) * (alpha + 2 * Real(k)));
    return (ratio + 1) / 2;
}

/// chi_{n,alpha}(0) = (2n+alpha+1/2)(2n+alpha+3/2)
template <class Real = double>
Real chi_at_zero(int n, Real alpha) {
    return (2 * Real(n) + alpha + Real(0.5)) * (2 * Real(n) + alpha + Real(1.5));
}

template <class Real = double>
BasicSymTridiagonal<Real> build_matrix(double alpha, double c, int K) {
    if (!(alpha > -0.5)) throw DomainError("build_matrix: alpha must exceed -1/2");
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("build_matrix: c must be non-negative");
    if (K < 2) throw DomainError("build_matrix: K must be at least 2");
    BasicSymTridiagonal<Real> t;
    t.diag.resize(static_cast<std::size_t>(K));
    t.offdiag.resize(static_cast<std::size_t>(K - 1));
    const Real a = alpha;
    const Real c2 = Real(c) * Real(c);
    for (int k = 0; k < K; ++k) {
        t.diag[static_cast<std::size_t>(k)] = chi_at_zero<Real>(k, a) + c2 * slepian_b<Real>(k, a);
        if (k + 1 < K) t.offdiag[static_cast<std::size_t>(k)] = c2 * slepian_a<Real>(k, a);
    }
    return t;
}

namespace detail {

template <class Real>
Real pivot_floor(const BasicSymTridiagonal<Real>& t) {
    Real emax = 1;
    for (const Real& e : t.offdiag) emax = std::max(emax, Real(e * e));
    return detail::scalar_limits<Real>::min() * emax;
}

/// Number of eigenvalues strictly below x (Sturm sequence via LDL^T pivots).
template <class Real>
std::size_t sturm_count(const BasicSymTridiagonal<Real>& t, const Real& x, const Real& pivmin) {
    std::size_t count = 0;
    Real q = t.diag[0] - x;
    if (detail::mabs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < t.order(); ++i) {
        q = (t.diag[i] - x) - t.offdiag[i - 1] * t.offdiag[i - 1] / q;
        if (detail::mabs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
    }
    return count;
}

template <class Real>
Real bisect_eigenvalue(const BasicSymTridiagonal<Real>& t, std::size_t index, Real lo, Real hi, const Real& pivmin) {
    for (int it = 0; it < 400; ++it) {
        const Real mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid, pivmin) > index) hi = mid;
        else lo = mid;
    }
    return (lo + hi) / 2;
}

/// Unit eigenvector in working precision; log_head = log|z_0|.
template <class Real>
struct TwistedVector {
    std::vector<Real> z;
    Real log_head = 0;
};

// One step of inverse iteration with the optimal unit start vector e_r
// (twisted factorisation). Tail components are formed by ratios, so tiny
// entries keep their relative accuracy.
template <class Real>
TwistedVector<Real> twisted_vector(const BasicSymTridiagonal<Real>& t, const Real& lambda, const Real& pivmin) {
    const std::size_t n = t.order();
    std::vector<Real> dplus(n);
    std::vector<Real> dminus(n);
    dplus[0] = t.diag[0] - lambda;
    if (detail::mabs(dplus[0]) < pivmin) dplus[0] = -pivmin;
    for (std::size_t i = 1; i < n; ++i) {
        dplus[i] = (t.diag[i] - lambda) - t.offdiag[i - 1] * t.offdiag[i - 1] / dplus[i - 1];
        if (detail::mabs(dplus[i]) < pivmin) dplus[i] = -pivmin;
    }
    dminus[n - 1] = t.diag[n - 1] - lambda;
    if (detail::mabs(dminus[n - 1]) < pivmin) dminus[n - 1] = -pivmin;
    for (std::size_t i = n - 1; i-- > 0;) {
        dminus[i] = (t.diag[i] - lambda) - t.offdiag[i] * t.offdiag[i] / dminus[i + 1];
        if (detail::mabs(dminus[i]) < pivmin) dminus[i] = -pivmin;
    }
    std::size_t r = 0;
    Real best = detail::scalar_limits<Real>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Real gamma = detail::mabs(dplus[i] + dminus[i] - (t.diag[i] - lambda));
        if (gamma < best) {
            best = gamma;
            r = i;
        }
    }

    TwistedVector<Real> out;
    auto& z = out.z;
    z.assign(n, Real(0));
    z[r] = 1;
    Real log_head = 0; // log|z_0| relative to z_r = 1
    for (std::size_t i = r; i-- > 0;) {
        const Real ratio = -t.offdiag[i] / dplus[i];
        z[i] = ratio * z[i + 1];
        log_head += detail::mlog(detail::mabs(ratio));
    }
    for (std::size_t i = r + 1; i < n; ++i) z[i] = -(t.offdiag[i - 1] / dminus[i]) * z[i - 1];

    Real scale = 0;
    for (const Real& v : z) scale = std::max(scale, Real(detail::mabs(v)));
    Real ss = 0;
    for (const Real& v : z) ss += (v / scale) * (v / scale);
    const Real norm = scale * detail::msqrt(ss);
    for (Real& v : z) v /= norm;
    out.log_head = log_head - detail::mlog(norm);
    return out;
}

template <class Real>
EigenPair to_eigen_pair(const Real& value, const TwistedVector<Real>& tv) {
    EigenPair pair;
    pair.value = static_cast<double>(value);
    pair.vector.resize(tv.z.size());
    for (std::size_t i = 0; i < tv.z.size(); ++i) pair.vector[i] = static_cast<double>(tv.z[i]);
    pair.log_abs_head = static_cast<double>(tv.log_head);
    return pair;
}

template <class Real>
EigenPair twisted_eigenvector(const BasicSymTridiagonal<Real>& t, const Real& lambda, const Real& pivmin) {
    return to_eigen_pair(lambda, twisted_vector(t, lambda, pivmin));
}

} // namespace detail

/// The m algebraically smallest eigenpairs of t, ascending. Vectors are
/// returned in double whatever the working precision.
template <class Real>
std::vector<EigenPair> eig_smallest(const BasicSymTridiagonal<Real>& t, int m) {
    const std::size_t n = t.order();
    if (m < 1 || static_cast<std::size_t>(m) > n) throw DomainError("eig_smallest: need 1 <= m <= K");
    if (t.offdiag.size() + 1 != n) throw DomainError("eig_smallest: malformed matrix");

    Real lo = detail::scalar_limits<Real>::infinity();
    Real hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        Real r = 0;
        if (i > 0) r += detail::mabs(t.offdiag[i - 1]);
        if (i + 1 < n) r += detail::mabs(t.offdiag[i]);
        lo = std::min(lo, Real(t.diag[i] - r));
        hi = std::max(hi, Real(t.diag[i] + r));
    }
    const Real pad = 2 * detail::scalar_limits<Real>::epsilon() * std::max(Real(detail::mabs(lo)), Real(detail::mabs(hi))) + Real(1e-300);
    lo -= pad;
    hi += pad;
    const Real pivmin = detail::pivot_floor(t);

    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(m));
    Real left = lo;
    for (int j = 0; j < m; ++j) {
        const Real value = detail::bisect_eigenvalue(t, static_cast<std::size_t>(j), left, hi, pivmin);
        out.push_back(detail::twisted_eigenvector(t, value, pivmin));
        left = std::max(lo, Real(value - 4 * detail::scalar_limits<Real>::epsilon() * detail::mabs(value)));
    }
    return out;
}

/// Eigenpair `index` of t in working precision, bisecting from a bracket
/// around a lower-precision guess (widened until it provably contains it).
template <class Real>
detail::TwistedVector<Real> refine_eigenpair(const BasicSymTridiagonal<Real>& t, std::size_t index, double guess, Real& value) {
    const Real pivmin = detail::pivot_floor(t);
    Real radius = Real(1e-12) * std::max(1.0, std::abs(guess));
    Real lo = Real(guess) - radius;
    Real hi = Real(guess) + radius;
    for (int grow = 0; grow < 200; ++grow) {
        if (detail::sturm_count(t, lo, pivmin) <= index && detail::sturm_count(t, hi, pivmin) > index) break;
        radius *= 4;
        lo = Real(guess) - radius;
        hi = Real(guess) + radius;
    }
    value = detail::bisect_eigenvalue(t, index, lo, hi, pivmin);
    return detail::twisted_vector(t, value, pivmin);
}

} // namespace hankel
