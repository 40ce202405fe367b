#pragma once

/**
 * @file series.hpp
 * @brief Truncated quaternionic power series and slice (Cullen) calculus.
 *
 * A series with coefficients on the left, f(q) = sum a_n q^n, is slice right regular:
 * on every slice L_I it satisfies (d/dx + (d/dy) I) f = 0, with I acting from the right.
 * Coefficients on the right, f(q) = sum q^n a_n, give slice left regular functions and
 * I acting from the left. Every slice operator here takes the handedness explicitly.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/quaternion.hpp"

namespace qherm {

/// Which side of q^n the coefficients sit on.
enum class CoeffSide { Left, Right };

/// Which side the slice unit I multiplies from in slice derivatives.
enum class Handedness { Left, Right };

enum class RegularityMode { Regular, AntiRegular };

/// Coefficients on the left of q^n make I act from the right, and vice versa.
[[nodiscard]] constexpr Handedness handedness_of(CoeffSide side) {
    return side == CoeffSide::Left ? Handedness::Right : Handedness::Left;
}

struct QSeries {
    CoeffSide side = CoeffSide::Left;
    std::vector<Quaternion> coeffs;

    /// Largest n with a_n != 0, or -1 for the zero series.
    [[nodiscard]] long degree() const {
        for (std::size_t n = coeffs.size(); n-- > 0;) {
            if (coeffs[n] != Quaternion{}) return static_cast<long>(n);
        }
        return -1;
    }
};

/// Ascending-order evaluation; powers of q are accumulated incrementally.
[[nodiscard]] inline Quaternion eval(const QSeries& series, const Quaternion& q) {
    Quaternion sum{};
    Quaternion power{1.0};
    for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
        sum += series.side == CoeffSide::Left ? series.coeffs[n] * power : power * series.coeffs[n];
        power = power * q;
    }
    return sum;
}

/// a_n -> n a_n, shifted down one degree.
[[nodiscard]] inline QSeries cullen_derivative(const QSeries& series) {
    QSeries d{series.side, {}};
    if (series.coeffs.size() <= 1) {
        d.coeffs.assign(1, Quaternion{});
        return d;
    }
    d.coeffs.reserve(series.coeffs.size() - 1);
    for (std::size_t n = 1; n < series.coeffs.size(); ++n) {
        d.coeffs.push_back(static_cast<double>(n) * series.coeffs[n]);
    }
    return d;
}

namespace detail {

inline void check_step(double h, double x, double y) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DegenerateStep("finite-difference step must be positive and finite");
    }
    if (x + h == x || y + h == y) {
        throw DegenerateStep("finite-difference step vanishes against the base point");
    }
}

/// Multiplies by I on the requested side.
[[nodiscard]] inline Quaternion times_unit(const Quaternion& v, const Quaternion& unit, Handedness hand) {
    return hand == Handedness::Left ? unit * v : v * unit;
}

struct SlicePartials {
    Quaternion dx;
    Quaternion dy;
    Quaternion unit;
};

template <class F>
SlicePartials slice_partials(F&& f, const Quaternion& q, double h) {
    const SliceForm s = slice_decompose(q);
    check_step(h, s.x, s.y);
    const Quaternion unit = s.I.as_quaternion();
    const auto at = [&](double x, double y) { return f(x + y * unit); };
    return {
        (at(s.x + h, s.y) - at(s.x - h, s.y)) / (2.0 * h),
        (at(s.x, s.y + h) - at(s.x, s.y - h)) / (2.0 * h),
        unit,
    };
}

} // namespace detail

/**
 * Cullen derivative by central differences on the slice through q:
 * (1/2)(df/dx - I df/dy) with I on the given side; df/dx alone when q is real.
 */
template <class F>
[[nodiscard]] Quaternion cullen_derivative_numeric(F&& f, const Quaternion& q, double h = 1e-5,
                                                   Handedness hand = Handedness::Right) {
    if (q.is_real()) {
        detail::check_step(h, q.x0, 0.0);
        return (f(Quaternion{q.x0 + h}) - f(Quaternion{q.x0 - h})) / (2.0 * h);
    }
    const auto p = detail::slice_partials(f, q, h);
    return 0.5 * (p.dx - detail::times_unit(p.dy, p.unit, hand));
}

struct SliceResidual {
    Quaternion value;
    double step = 0.0;
};

/**
 * Regular mode: (1/2)(df/dx + I df/dy); AntiRegular mode: (1/2)(df/dx - I df/dy).
 * Both vanish to O(h^2) on functions of the corresponding class. Real q uses the slice through i.
 */
template <class F>
[[nodiscard]] SliceResidual regularity_residual(F&& f, const Quaternion& q, RegularityMode mode, double h = 1e-5,
                                                Handedness hand = Handedness::Right) {
    const auto p = detail::slice_partials(f, q, h);
    const Quaternion turned = detail::times_unit(p.dy, p.unit, hand);
    return {0.5 * (mode == RegularityMode::Regular ? p.dx + turned : p.dx - turned), h};
}

// ---------------------------------------------------------------------------
// Slice splitting
// ---------------------------------------------------------------------------

/// Complex polynomial sum c_n z^n evaluated in ascending order.
[[nodiscard]] inline Complex eval_complex_series(std::span<const Complex> coeffs, Complex z) {
    Complex sum{};
    Complex power{1.0};
    for (const Complex& c : coeffs) {
        sum += c * power;
        power *= z;
    }
    return sum;
}

/// (1/2)(dF/dx + i dF/dy) by central differences; zero for holomorphic F up to O(h^2).
template <class F>
[[nodiscard]] Complex cauchy_riemann_residual(F&& f, Complex z, double h = 1e-5) {
    const Complex dx = (f(z + h) - f(z - h)) / (2.0 * h);
    const Complex dy = (f(z + Complex(0.0, h)) - f(z - Complex(0.0, h))) / (2.0 * h);
    return 0.5 * (dx + Complex(0.0, 1.0) * dy);
}

/**
 * Restriction of a series to L_I written as F(z) + J G(z) (left coefficients) or
 * F(z) + G(z) J (right coefficients), F and G holomorphic. Coefficients of F and G are
 * stored as complex numbers through x + yI -> x + iy.
 */
struct SliceSplit {
    CoeffSide side = CoeffSide::Left;
    UnitImaginary I;
    UnitImaginary J;
    std::vector<Complex> F;
    std::vector<Complex> G;

    [[nodiscard]] Complex eval_F(Complex z) const { return eval_complex_series(F, z); }
    [[nodiscard]] Complex eval_G(Complex z) const { return eval_complex_series(G, z); }

    /// F(z) + J G(z) (or F(z) + G(z) J) as a quaternion, for z identified with x + yI.
    [[nodiscard]] Quaternion recombine(Complex z) const {
        const Quaternion f = on_slice(eval_F(z), I);
        const Quaternion g = on_slice(eval_G(z), I);
        const Quaternion j = J.as_quaternion();
        return side == CoeffSide::Left ? f + j * g : f + g * j;
    }
};

/// Splits each coefficient in the orthonormal basis {1, I, J, IJ} of R^4.
[[nodiscard]] inline SliceSplit slice_split(const QSeries& series, const UnitImaginary& I, const UnitImaginary& J,
                                            double tol = 1e-12) {
    if (std::abs(I.dot(J)) > tol) {
        throw NotPerpendicular("slice_split: J must be perpendicular to I");
    }
    const Quaternion i = I.as_quaternion();
    const Quaternion j = J.as_quaternion();
    const Quaternion ij = i * j;
    SliceSplit out{series.side, I, J, {}, {}};
    out.F.reserve(series.coeffs.size());
    out.G.reserve(series.coeffs.size());
    for (const Quaternion& a : series.coeffs) {
        const double c0 = dot4(a, units::one);
        const double c1 = dot4(a, i);
        const double c2 = dot4(a, j);
        const double c3 = dot4(a, ij);
        out.F.emplace_back(c0, c1);
        // J (b0 + b1 I) = b0 J - b1 IJ ;  (b0 + b1 I) J = b0 J + b1 IJ
        out.G.emplace_back(c2, series.side == CoeffSide::Left ? -c3 : c3);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Taylor coefficients
// ---------------------------------------------------------------------------

struct TaylorResult {
    QSeries series;
    /// Orders whose estimated stencil error exceeds the coefficient magnitude.
    std::vector<std::size_t> noisy_orders;
};

/**
 * (1/n!) d^n f/dx^n (0) for n = 0..N from centred n-th differences along the real axis.
 * With richardson = true the step-h and step-h/2 stencils are combined to cancel the h^2 term.
 * The stencil error estimate (step difference plus round-off bound) is compared against
 * max(|coefficient|, noise_floor).
 */
template <class F>
[[nodiscard]] TaylorResult taylor_coeffs(F&& f, std::size_t N, double h = 0.1, bool richardson = true,
                                         CoeffSide side = CoeffSide::Left, double noise_floor = 1e-8) {
    detail::check_step(h, 0.0, 0.0);
    const auto nth_difference = [&](std::size_t n, double step, double& magnitude) {
        Quaternion acc{};
        double binom = 1.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double x = (0.5 * static_cast<double>(n) - static_cast<double>(k)) * step;
            const Quaternion v = f(Quaternion{x});
            magnitude = std::max(magnitude, norm(v));
            acc += ((k % 2 == 0) ? binom : -binom) * v;
            binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
        return acc / std::pow(step, static_cast<double>(n));
    };

    TaylorResult out;
    out.series.side = side;
    double factorial = 1.0;
    for (std::size_t n = 0; n <= N; ++n) {
        if (n > 0) factorial *= static_cast<double>(n);
        double magnitude = 0.0;
        const Quaternion coarse = nth_difference(n, h, magnitude);
        Quaternion derivative = coarse;
        double error = 0.0;
        if (n > 0) {
            const Quaternion fine = nth_difference(n, h / 2.0, magnitude);
            error = norm(fine - coarse) / 3.0;
            if (richardson) derivative = (4.0 * fine - coarse) / 3.0;
            else error *= 4.0;
            const double roundoff = std::numeric_limits<double>::epsilon() * std::pow(2.0, static_cast<double>(n)) *
                                    magnitude / std::pow(h / 2.0, static_cast<double>(n));
            error += roundoff;
        }
        const Quaternion coeff = derivative / factorial;
        if (error / factorial > std::max(norm(coeff), noise_floor)) out.noisy_orders.push_back(n);
        out.series.coeffs.push_back(coeff);
    }
    return out;
}

} // namespace qherm
