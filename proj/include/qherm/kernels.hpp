#pragma once

/**
 * @file kernels.hpp
 * @brief Reproducing kernels built from the Hermite families, as truncated series and in
 * closed form, plus reproducing-property checks by quadrature.
 *
 * Quaternionic kernel sums keep the operand order sum_n A_n(q1) conj(A_n(q2)).
 */

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/hermite.hpp"
#include "qherm/quadrature.hpp"
#include "qherm/quaternion.hpp"

namespace qherm {

/// Adaptive truncation: stop once two consecutive terms fall below rel_tol times the running
/// sum of term magnitudes (the running diagonal value when q1 = q2), or at max_terms.
struct Truncation {
    std::size_t max_terms = 200;
    double rel_tol = 1e-14;
};

template <class V>
struct KernelValueT {
    V value{};
    std::size_t truncation = 0;  ///< index of the last term included
    double est_tail = 0.0;
    bool converged = true;       ///< false when the last term ratio is >= 1
};

using KernelValue = KernelValueT<Quaternion>;
using ComplexKernelValue = KernelValueT<Complex>;

namespace detail {

[[nodiscard]] inline double magnitude(const Quaternion& q) { return norm(q); }
[[nodiscard]] inline double magnitude(Complex z) { return std::abs(z); }

/**
 * Tail estimate from the decay ratio of term magnitudes, taken over pairs of terms
 * (r^2 = (m_N + m_{N-1}) / (m_{N-2} + m_{N-3})) so parity zeros and oscillation do not
 * break it. A ratio >= 1 marks non-convergence unless the tolerance test already stopped the sum.
 */
inline void estimate_tail(const std::vector<double>& mags, bool tolerance_met, double& tail, bool& converged) {
    const std::size_t N = mags.size() - 1;
    const double recent = mags[N] + (N >= 1 ? mags[N - 1] : 0.0);
    tail = 0.0;
    converged = true;
    if (recent == 0.0) return;
    double r = 1.0;
    if (N >= 3 && mags[N - 2] + mags[N - 3] > 0.0) r = std::sqrt(recent / (mags[N - 2] + mags[N - 3]));
    else if (N >= 1 && mags[N - 1] > 0.0) r = mags[N] / mags[N - 1];
    if (r < 1.0) {
        tail = mags[N] * r / (1.0 - r);
    } else if (tolerance_met) {
        tail = recent;
    } else {
        converged = false;
        tail = std::numeric_limits<double>::infinity();
    }
}

/// Sums term(n) for n = 0..N (fixed) or adaptively under `trunc`.
template <class V, class Term>
[[nodiscard]] KernelValueT<V> sum_series(Term&& term, std::optional<std::size_t> fixed, const Truncation& trunc) {
    KernelValueT<V> out;
    std::vector<double> mags;
    double majorant = 0.0;
    bool tolerance_met = false;
    const std::size_t last = fixed ? *fixed : trunc.max_terms;
    for (std::size_t n = 0; n <= last; ++n) {
        const V t = term(n);
        out.value += t;
        mags.push_back(magnitude(t));
        majorant += mags.back();
        out.truncation = n;
        if (!fixed && n >= 1 && mags[n] <= trunc.rel_tol * majorant && mags[n - 1] <= trunc.rel_tol * majorant) {
            tolerance_met = true;
            break;
        }
    }
    estimate_tail(mags, tolerance_met, out.est_tail, out.converged);
    return out;
}

[[nodiscard]] inline std::size_t table_size(std::optional<std::size_t> fixed, const Truncation& trunc) {
    return fixed ? *fixed : trunc.max_terms;
}

} // namespace detail

/// |q| beyond which Gaussian-type kernel growth leaves double range: exponent kept below ~300.
[[nodiscard]] inline double kernel_radius_max(double s) {
    check_s(s);
    return std::sqrt(300.0 * s / (1.0 - s));
}
inline constexpr double canonical_radius_max = 17.0;

namespace detail {

inline void guard_radius(double r, double r_max, const char* what) {
    if (!(r <= r_max)) throw DomainError(std::string(what) + ": argument outside the supported radius");
}

} // namespace detail

// ---------------------------------------------------------------------------
// K_s
// ---------------------------------------------------------------------------

[[nodiscard]] inline KernelValue K_s_series(const Quaternion& q1, const Quaternion& q2, double s,
                                            std::optional<std::size_t> N = std::nullopt, Truncation trunc = {}) {
    detail::guard_radius(std::max(norm(q1), norm(q2)), kernel_radius_max(s), "K_s_series");
    const auto n_max = static_cast<unsigned>(detail::table_size(N, trunc));
    const auto a = hermite_normalized_table(n_max, q1, s);
    const auto b = hermite_normalized_table(n_max, q2, s);
    return detail::sum_series<Quaternion>([&](std::size_t n) { return mul_conj(a[n], b[n]); }, N, trunc);
}

[[nodiscard]] inline KernelValue K_s_series(const Quaternion& q1, const Quaternion& q2, double s, std::size_t N) {
    return K_s_series(q1, q2, s, std::optional<std::size_t>{N});
}

[[nodiscard]] inline ComplexKernelValue K_s_series_complex(Complex z, Complex w, double s,
                                                           std::optional<std::size_t> N = std::nullopt,
                                                           Truncation trunc = {}) {
    const auto n_max = static_cast<unsigned>(detail::table_size(N, trunc));
    const auto a = hermite_normalized_table(n_max, z, s);
    const auto b = hermite_normalized_table(n_max, w, s);
    return detail::sum_series<Complex>([&](std::size_t n) { return a[n] * std::conj(b[n]); }, N, trunc);
}

/// ((1-s^2)/(2 pi s)) exp[-((s-1)^2/(4s))(z^2 + conj(w)^2) + ((1-s^2)/(2s)) z conj(w)]
[[nodiscard]] inline Complex K_s_closed_complex(Complex z, Complex w, double s) {
    check_s(s);
    const Complex wb = std::conj(w);
    const double pre = (1.0 - s * s) / (2.0 * std::numbers::pi * s);
    return pre * std::exp(-((s - 1.0) * (s - 1.0) / (4.0 * s)) * (z * z + wb * wb) + ((1.0 - s * s) / (2.0 * s)) * z * wb);
}

/// Diagonal of the closed form: ((1-s^2)/(2 pi s)) exp[(1-s) x^2 + ((1-s)/s) y^2].
[[nodiscard]] inline double K_s_diag(Complex z, double s) {
    check_s(s);
    const double x = z.real();
    const double y = z.imag();
    return (1.0 - s * s) / (2.0 * std::numbers::pi * s) * std::exp((1.0 - s) * x * x + (1.0 - s) / s * y * y);
}

/// Candidate diagonal exp[((1-s)/2) x^2 + ((s^2-3s+2)/(2s)) y^2]; it does
/// not agree with the closed form at w = z and is kept only for comparison.
[[nodiscard]] inline double K_s_diag_candidate(Complex z, double s) {
    check_s(s);
    const double x = z.real();
    const double y = z.imag();
    return (1.0 - s * s) / (2.0 * std::numbers::pi * s) *
           std::exp((1.0 - s) / 2.0 * x * x + (s * s - 3.0 * s + 2.0) / (2.0 * s) * y * y);
}

/// Quaternionic diagonal K_s(q, q) via the slice value z = x0 + i|Im q|.
[[nodiscard]] inline double K_s_diag(const Quaternion& q, double s) {
    const SliceForm f = slice_decompose(q);
    return K_s_diag(Complex{f.x, f.y}, s);
}

// ---------------------------------------------------------------------------
// frak K_s: the family b_n^{-1/2} exp(-z^2/2) H_n(z)
// ---------------------------------------------------------------------------

[[nodiscard]] inline ComplexKernelValue frak_K_series(Complex z, Complex w, double s,
                                                      std::optional<std::size_t> N = std::nullopt,
                                                      Truncation trunc = {}) {
    const auto n_max = static_cast<unsigned>(detail::table_size(N, trunc));
    const Complex gz = std::exp(-z * z / 2.0);
    const Complex gw = std::exp(-w * w / 2.0);
    const auto a = hermite_normalized_table(n_max, z, s);
    const auto b = hermite_normalized_table(n_max, w, s);
    return detail::sum_series<Complex>([&](std::size_t n) { return (gz * a[n]) * std::conj(gw * b[n]); }, N, trunc);
}

[[nodiscard]] inline Complex frak_K_closed(Complex z, Complex w, double s) {
    check_s(s);
    const Complex wb = std::conj(w);
    const double pre = (1.0 - s * s) / (2.0 * std::numbers::pi * s);
    return pre * std::exp(-((1.0 + s * s) / (4.0 * s)) * (z * z + wb * wb) + ((1.0 - s * s) / (2.0 * s)) * z * wb);
}

/// ((1-s^2)/(2 pi s)) exp[-s x^2 + y^2 / s]
[[nodiscard]] inline double frak_K_diag(Complex z, double s) {
    check_s(s);
    const double x = z.real();
    const double y = z.imag();
    return (1.0 - s * s) / (2.0 * std::numbers::pi * s) * std::exp(-s * x * x + y * y / s);
}

// ---------------------------------------------------------------------------
// K_n and the Bargmann-type kernel
// ---------------------------------------------------------------------------

/// sum_m h_{n,m}(q1) conj(h_{n,m}(q2)) / (n! m!)
[[nodiscard]] inline KernelValue K_n_series(const Quaternion& q1, const Quaternion& q2, unsigned n,
                                            std::optional<std::size_t> M = std::nullopt, Truncation trunc = {}) {
    detail::guard_radius(std::max(norm(q1), norm(q2)), canonical_radius_max, "K_n_series");
    const auto m_max = static_cast<unsigned>(detail::table_size(M, trunc));
    const auto a = h_nm_normalized_row(n, m_max, q1);
    const auto b = h_nm_normalized_row(n, m_max, q2);
    return detail::sum_series<Quaternion>([&](std::size_t m) { return mul_conj(a[m], b[m]); }, M, trunc);
}

[[nodiscard]] inline KernelValue K_n_series(const Quaternion& q1, const Quaternion& q2, unsigned n, std::size_t M) {
    return K_n_series(q1, q2, n, std::optional<std::size_t>{M});
}

/// sum_n q1^n conj(q2)^n / n!, products in exactly this order.
[[nodiscard]] inline KernelValue bargmann_kernel(const Quaternion& q1, const Quaternion& q2,
                                                 std::optional<std::size_t> N = std::nullopt, Truncation trunc = {}) {
    detail::guard_radius(std::max(norm(q1), norm(q2)), canonical_radius_max, "bargmann_kernel");
    const Quaternion q2b = conj(q2);
    Quaternion p1{1.0};
    Quaternion p2{1.0};
    double inv_fact = 1.0;
    return detail::sum_series<Quaternion>(
        [&](std::size_t n) {
            if (n > 0) {
                p1 = p1 * q1;
                p2 = p2 * q2b;
                inv_fact /= static_cast<double>(n);
            }
            return inv_fact * (p1 * p2);
        },
        N, trunc);
}

[[nodiscard]] inline KernelValue bargmann_kernel(const Quaternion& q1, const Quaternion& q2, std::size_t N) {
    return bargmann_kernel(q1, q2, std::optional<std::size_t>{N});
}

// ---------------------------------------------------------------------------
// Reproducing property
// ---------------------------------------------------------------------------

using KernelFn = std::function<Quaternion(const Quaternion&, const Quaternion&)>;
using QFunction = std::function<Quaternion(const Quaternion&)>;

struct ReproducingReport {
    double max_error = 0.0;
    std::size_t samples = 0;
};

/// max over x of |int F(y) K(y, x) dmu(y) - F(x)|.
[[nodiscard]] inline ReproducingReport reproducing_check(const KernelFn& kernel, const QFunction& F,
                                                         const QuadratureSpec& spec,
                                                         const std::vector<Quaternion>& x_samples) {
    ReproducingReport r;
    r.samples = x_samples.size();
    for (const Quaternion& x : x_samples) {
        const Quaternion v = integrate_H([&](const Quaternion& y) { return F(y) * kernel(y, x); }, spec);
        r.max_error = std::max(r.max_error, norm(v - F(x)));
    }
    return r;
}

/// max over (x, z) of |int K(x, y) K(y, z) dmu(y) - K(x, z)|.
[[nodiscard]] inline ReproducingReport idempotence_check(const KernelFn& kernel, const QuadratureSpec& spec,
                                                         const std::vector<std::pair<Quaternion, Quaternion>>& pairs) {
    ReproducingReport r;
    r.samples = pairs.size();
    for (const auto& [x, z] : pairs) {
        const Quaternion v = integrate_H([&](const Quaternion& y) { return kernel(x, y) * kernel(y, z); }, spec);
        r.max_error = std::max(r.max_error, norm(v - kernel(x, z)));
    }
    return r;
}

} // namespace qherm
