#pragma once

/**
 * @file quaternion.hpp
 * @brief Quaternion arithmetic and the decompositions the rest of the library is built on.
 *
 * A quaternion q = x0 + x1 i + x2 j + x3 k is identified with the 2x2 complex matrix
 *
 *     [ x0 + i x3   -x2 + i x1 ]
 *     [ x2 + i x1    x0 - i x3 ]
 *
 * so that quaternion multiplication is matrix multiplication and conj(q) is the
 * matrix adjoint. Every non-real q lies on exactly one slice L_I = R + I R with
 * I a unit imaginary quaternion, and can be diagonalised as q = U diag(z, conj z) U^+
 * with U in SU(2) and Im z >= 0.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <ostream>

#include "qherm/errors.hpp"

namespace qherm {

using Complex = std::complex<double>;

/// Absolute/relative tolerance pair. A comparison passes if |a - b| <= abs + rel * max(|a|, |b|).
struct Tolerance {
    double abs = 1e-12;
    double rel = 0.0;

    [[nodiscard]] constexpr double bound(double scale) const { return abs + rel * scale; }
};

[[nodiscard]] inline bool approx_equal(double a, double b, Tolerance tol = {}) {
    return std::abs(a - b) <= tol.bound(std::max(std::abs(a), std::abs(b)));
}

[[nodiscard]] inline bool approx_equal(Complex a, Complex b, Tolerance tol = {}) {
    return std::abs(a - b) <= tol.bound(std::max(std::abs(a), std::abs(b)));
}

// ---------------------------------------------------------------------------
// Quaternion
// ---------------------------------------------------------------------------

struct Quaternion {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double real) : x0(real) {} // NOLINT: reals embed implicitly, as in std::complex
    constexpr Quaternion(double a, double b, double c, double d) : x0(a), x1(b), x2(c), x3(d) {}

    [[nodiscard]] constexpr double real() const { return x0; }
    [[nodiscard]] constexpr Quaternion imag() const { return {0.0, x1, x2, x3}; }
    [[nodiscard]] constexpr bool is_real() const { return x1 == 0.0 && x2 == 0.0 && x3 == 0.0; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        x0 *= s; x1 *= s; x2 *= s; x3 *= s;
        return *this;
    }
    constexpr Quaternion& operator/=(double s) {
        x0 /= s; x1 /= s; x2 /= s; x3 /= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

[[nodiscard]] constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
[[nodiscard]] constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
[[nodiscard]] constexpr Quaternion operator-(const Quaternion& a) { return {-a.x0, -a.x1, -a.x2, -a.x3}; }
[[nodiscard]] constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
[[nodiscard]] constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
[[nodiscard]] constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

/// Hamilton product (non-commutative).
[[nodiscard]] constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {
        a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
        a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
        a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
        a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0,
    };
}

inline constexpr Quaternion& operator*=(Quaternion& a, const Quaternion& b) { return a = a * b; }

[[nodiscard]] constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) { return a * b; }

/**
 * a * conj(b), with the terms paired so that mul_conj(b, a) == conj(mul_conj(a, b)) holds
 * bitwise: x0 is symmetric in (a, b) and each imaginary part is a sum of two exact antisymmetric pairs.
 */
[[nodiscard]] constexpr Quaternion mul_conj(const Quaternion& a, const Quaternion& b) {
    return {
        a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3,
        (a.x1 * b.x0 - a.x0 * b.x1) + (a.x3 * b.x2 - a.x2 * b.x3),
        (a.x2 * b.x0 - a.x0 * b.x2) + (a.x1 * b.x3 - a.x3 * b.x1),
        (a.x3 * b.x0 - a.x0 * b.x3) + (a.x2 * b.x1 - a.x1 * b.x2),
    };
}

[[nodiscard]] constexpr Quaternion conj(const Quaternion& q) { return {q.x0, -q.x1, -q.x2, -q.x3}; }

[[nodiscard]] constexpr double norm2(const Quaternion& q) {
    return q.x0 * q.x0 + q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3;
}

[[nodiscard]] inline double norm(const Quaternion& q) {
    return std::sqrt(norm2(q));
}

/// Euclidean inner product of the coordinate 4-vectors.
[[nodiscard]] constexpr double dot4(const Quaternion& a, const Quaternion& b) {
    return a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

[[nodiscard]] inline Quaternion inverse(const Quaternion& q) {
    const double n2 = norm2(q);
    if (n2 == 0.0) {
        throw DomainError("inverse: zero quaternion");
    }
    return conj(q) / n2;
}

/// q^n by repeated multiplication, n >= 0.
[[nodiscard]] inline Quaternion qpow(const Quaternion& q, unsigned n) {
    Quaternion result{1.0};
    for (unsigned k = 0; k < n; ++k) {
        result = result * q;
    }
    return result;
}

[[nodiscard]] inline bool approx_equal(const Quaternion& a, const Quaternion& b, Tolerance tol = {}) {
    return norm(a - b) <= tol.bound(std::max(norm(a), norm(b)));
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ')';
}

namespace units {
inline constexpr Quaternion one{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion i{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion j{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion k{0.0, 0.0, 0.0, 1.0};
} // namespace units

// ---------------------------------------------------------------------------
// 2x2 complex matrices
// ---------------------------------------------------------------------------

/// Row-major 2x2 complex matrix.
struct Mat2 {
    std::array<Complex, 4> a{};

    [[nodiscard]] constexpr Complex& operator()(std::size_t r, std::size_t c) { return a[2 * r + c]; }
    [[nodiscard]] constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return a[2 * r + c]; }

    [[nodiscard]] static Mat2 identity() { return {{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }
    [[nodiscard]] static Mat2 diag(Complex d0, Complex d1) { return {{d0, Complex{}, Complex{}, d1}}; }

    [[nodiscard]] Mat2 adjoint() const {
        return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
    }
    [[nodiscard]] Complex trace() const { return a[0] + a[3]; }
    [[nodiscard]] Complex det() const { return a[0] * a[3] - a[1] * a[2]; }

    Mat2& operator+=(const Mat2& o) {
        for (std::size_t n = 0; n < 4; ++n) a[n] += o.a[n];
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        for (std::size_t n = 0; n < 4; ++n) a[n] -= o.a[n];
        return *this;
    }
    Mat2& operator*=(Complex s) {
        for (auto& v : a) v *= s;
        return *this;
    }
};

[[nodiscard]] inline Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
[[nodiscard]] inline Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
[[nodiscard]] inline Mat2 operator*(Mat2 x, Complex s) { return x *= s; }
[[nodiscard]] inline Mat2 operator*(Complex s, Mat2 x) { return x *= s; }

[[nodiscard]] inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
             x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
}

/// Largest entrywise modulus of x - y.
[[nodiscard]] inline double max_abs_diff(const Mat2& x, const Mat2& y) {
    double m = 0.0;
    for (std::size_t n = 0; n < 4; ++n) m = std::max(m, std::abs(x.a[n] - y.a[n]));
    return m;
}

[[nodiscard]] inline Mat2 to_matrix(const Quaternion& q) {
    return {{Complex{q.x0, q.x3}, Complex{-q.x2, q.x1}, Complex{q.x2, q.x1}, Complex{q.x0, -q.x3}}};
}

/// Inverse of to_matrix. Throws PatternViolation if m is not of quaternion form within tol.
[[nodiscard]] inline Quaternion from_matrix(const Mat2& m, Tolerance tol = {}) {
    const Quaternion q{
        0.5 * (m(0, 0).real() + m(1, 1).real()),
        0.5 * (m(0, 1).imag() + m(1, 0).imag()),
        0.5 * (m(1, 0).real() - m(0, 1).real()),
        0.5 * (m(0, 0).imag() - m(1, 1).imag()),
    };
    double scale = 0.0;
    for (const auto& v : m.a) scale = std::max(scale, std::abs(v));
    if (max_abs_diff(to_matrix(q), m) > tol.bound(scale)) {
        throw PatternViolation("from_matrix: matrix is not of the form [[a, -conj(b)], [b, conj(a)]]");
    }
    return q;
}

// ---------------------------------------------------------------------------
// Polar form
// ---------------------------------------------------------------------------

/// x0 = r cos(theta), x1 = r sin(theta) sin(phi) cos(psi),
/// x2 = r sin(theta) sin(phi) sin(psi), x3 = r sin(theta) cos(phi).
struct PolarForm {
    double r = 0.0;
    double theta = 0.0; ///< [0, pi]
    double phi = 0.0;   ///< [0, pi]
    double psi = 0.0;   ///< [0, 2 pi)
};

/// Undetermined angles (r = 0, or sin(theta) = 0) are set to 0.
[[nodiscard]] inline PolarForm polar(const Quaternion& q) {
    PolarForm p;
    p.r = norm(q);
    if (p.r == 0.0) return p;
    p.theta = std::acos(std::clamp(q.x0 / p.r, -1.0, 1.0));
    const double v = std::sqrt(q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3);
    if (v == 0.0) return p;
    p.phi = std::acos(std::clamp(q.x3 / v, -1.0, 1.0));
    if (q.x1 != 0.0 || q.x2 != 0.0) {
        p.psi = std::atan2(q.x2, q.x1);
        if (p.psi < 0.0) p.psi += 2.0 * std::numbers::pi;
    }
    return p;
}

[[nodiscard]] inline Quaternion from_polar(const PolarForm& p) {
    const double rs = p.r * std::sin(p.theta);
    return {p.r * std::cos(p.theta), rs * std::sin(p.phi) * std::cos(p.psi),
            rs * std::sin(p.phi) * std::sin(p.psi), rs * std::cos(p.phi)};
}

/// A(r) = r * identity.
[[nodiscard]] inline Mat2 polar_amplitude(const PolarForm& p) {
    return Mat2::diag(p.r, p.r);
}

/// sigma(n) = [[cos phi, sin phi e^{i psi}], [sin phi e^{-i psi}, -cos phi]]; q = A(r) exp(i theta sigma(n)).
[[nodiscard]] inline Mat2 polar_axis(const PolarForm& p) {
    const double c = std::cos(p.phi);
    const double s = std::sin(p.phi);
    return {{Complex{c}, s * std::polar(1.0, p.psi), s * std::polar(1.0, -p.psi), Complex{-c}}};
}

// ---------------------------------------------------------------------------
// Slices
// ---------------------------------------------------------------------------

/// Element of the unit sphere of imaginary quaternions; I * I = -1.
class UnitImaginary {
public:
    /// The canonical choice i, used for real quaternions.
    constexpr UnitImaginary() = default;

    /// Validates |(x1, x2, x3)| = 1 within tol.
    [[nodiscard]] static UnitImaginary make(double x1, double x2, double x3, Tolerance tol = {}) {
        const double n = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
        if (!approx_equal(n, 1.0, tol)) {
            throw DomainError("UnitImaginary: vector is not of unit length");
        }
        return UnitImaginary{x1, x2, x3};
    }

    /// Rescales a non-zero vector onto the sphere.
    [[nodiscard]] static UnitImaginary normalized(double x1, double x2, double x3) {
        const double n = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
        if (n == 0.0) {
            throw DomainError("UnitImaginary: zero vector");
        }
        return UnitImaginary{x1 / n, x2 / n, x3 / n};
    }

    [[nodiscard]] static UnitImaginary normalized(const Quaternion& q) { return normalized(q.x1, q.x2, q.x3); }

    [[nodiscard]] constexpr double x1() const { return x1_; }
    [[nodiscard]] constexpr double x2() const { return x2_; }
    [[nodiscard]] constexpr double x3() const { return x3_; }
    [[nodiscard]] constexpr Quaternion as_quaternion() const { return {0.0, x1_, x2_, x3_}; }

    /// Inner product of the imaginary parts as 3-vectors.
    [[nodiscard]] constexpr double dot(const UnitImaginary& o) const {
        return x1_ * o.x1_ + x2_ * o.x2_ + x3_ * o.x3_;
    }

private:
    constexpr UnitImaginary(double a, double b, double c) : x1_(a), x2_(b), x3_(c) {}

    double x1_ = 1.0;
    double x2_ = 0.0;
    double x3_ = 0.0;
};

/// q = x + y I with y >= 0. For real q, y = 0 and I is the canonical i.
struct SliceForm {
    double x = 0.0;
    double y = 0.0;
    UnitImaginary I{};

    [[nodiscard]] Quaternion reconstruct() const { return x + y * I.as_quaternion(); }
    /// The image of this point in C under x + yI -> x + iy.
    [[nodiscard]] Complex as_complex() const { return {x, y}; }
};

[[nodiscard]] inline SliceForm slice_decompose(const Quaternion& q) {
    const double y = std::sqrt(q.x1 * q.x1 + q.x2 * q.x2 + q.x3 * q.x3);
    if (y == 0.0) return {q.x0, 0.0, UnitImaginary{}};
    return {q.x0, y, UnitImaginary::normalized(q.x1, q.x2, q.x3)};
}

/// Embeds z = a + ib into the slice L_I as a + b I.
[[nodiscard]] inline Quaternion on_slice(Complex z, const UnitImaginary& I) {
    return z.real() + z.imag() * I.as_quaternion();
}

// ---------------------------------------------------------------------------
// SU(2) diagonalisation
// ---------------------------------------------------------------------------

struct SU2Factor {
    Mat2 u = Mat2::identity(); ///< unitary, det 1
    Complex z;                 ///< Im z >= 0

    [[nodiscard]] Mat2 reconstruct() const { return u * Mat2::diag(z, std::conj(z)) * u.adjoint(); }
    /// u diag(d0, d1) u^+
    [[nodiscard]] Mat2 conjugate_diag(Complex d0, Complex d1) const {
        return u * Mat2::diag(d0, d1) * u.adjoint();
    }
};

/**
 * Unitary eigendecomposition of the (normal) matrix of q:
 * to_matrix(q) = u diag(z, conj z) u^+ with z = x0 + i|Im q| = r e^{i theta}.
 *
 * The traceless hermitian part H = (M - x0)/i = [[a, b], [conj b, -a]] has eigenvalues
 * +-|Im q|; the +|Im q| eigenvector becomes the first column of u, and the second column
 * is fixed by det u = 1.
 */
[[nodiscard]] inline SU2Factor su2_factor(const Quaternion& q) {
    const Mat2 m = to_matrix(q);
    const double x0 = 0.5 * (m(0, 0) + m(1, 1)).real();
    const double a = 0.5 * (m(0, 0) - m(1, 1)).imag();
    const Complex b = Complex{0.0, -1.0} * m(0, 1);
    const double lambda = std::sqrt(a * a + std::norm(b));

    SU2Factor f;
    f.z = Complex{x0, lambda};
    if (lambda == 0.0) return f;

    Complex v0;
    Complex v1;
    if (a >= 0.0) {
        v0 = lambda + a;
        v1 = std::conj(b);
    } else {
        v0 = b;
        v1 = lambda - a;
    }
    const double n = std::sqrt(std::norm(v0) + std::norm(v1));
    v0 /= n;
    v1 /= n;
    f.u = Mat2{{v0, -std::conj(v1), v1, std::conj(v0)}};
    return f;
}

/**
 * The explicit SU(2) element diag(e^{i a/2}, e^{-i a/2}) R(phi) diag(e^{i b/2}, e^{-i b/2}),
 * R(phi) = [[cos phi/2, i sin phi/2], [i sin phi/2, cos phi/2]], proposed for the
 * decomposition q = u Z u^+ with a = b = psi.
 */
[[nodiscard]] inline Mat2 polar_uq(double phi, double psi_left, double psi_right) {
    const auto d = [](double angle) {
        return Mat2::diag(std::polar(1.0, angle / 2.0), std::polar(1.0, -angle / 2.0));
    };
    const double c = std::cos(phi / 2.0);
    const double s = std::sin(phi / 2.0);
    const Mat2 rot{{Complex{c}, Complex{0.0, s}, Complex{0.0, s}, Complex{c}}};
    return d(psi_left) * rot * d(psi_right);
}

/**
 * max |u Z u^+ - to_matrix(q)| for the polar u built from the polar angles of q,
 * with psi_shift added to the left phase factor. With psi_shift = 0 this is generically
 * O(|q|); with psi_shift = pi/2 it vanishes to round-off. The right phase factor commutes
 * with Z and never matters.
 */
[[nodiscard]] inline double polar_uq_residual(const Quaternion& q, double psi_shift = 0.0) {
    const PolarForm p = polar(q);
    const Complex z = std::polar(p.r, p.theta);
    const Mat2 u = polar_uq(p.phi, p.psi + psi_shift, p.psi);
    return max_abs_diff(u * Mat2::diag(z, std::conj(z)) * u.adjoint(), to_matrix(q));
}

// ---------------------------------------------------------------------------
// Exponential
// ---------------------------------------------------------------------------

/// sum_n q^n / n!, stopping at the first term with norm < tol * max(1, |partial sum|).
[[nodiscard]] inline Quaternion q_exp(const Quaternion& q, double tol = 1e-17) {
    if (!(tol > 0.0)) throw DomainError("q_exp: tol must be positive");
    Quaternion sum{1.0};
    Quaternion term{1.0};
    for (unsigned n = 1; n < 4096; ++n) {
        term = term * q / static_cast<double>(n);
        sum += term;
        if (norm(term) < tol * std::max(1.0, norm(sum))) return sum;
    }
    throw ConvergenceFailure("q_exp: series did not reach tolerance");
}

} // namespace qherm
