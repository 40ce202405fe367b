#pragma once

/**
 * @file landau.hpp
 * @brief Exact action of the Landau operator
 *   L = -1/4 { 4 d^2/dz dzbar + 2 (z d/dz - zbar d/dzbar) - |z|^2 }
 * on functions P(z, zbar) exp(-alpha z zbar).
 */

#include <optional>
#include <stdexcept>

#include "qherm/hermite.hpp"
#include "qherm/poly.hpp"

namespace qherm {

/// poly(z, zbar) * exp(-alpha z zbar)
struct GaussPoly {
    RationalBiPoly poly;
    Rational alpha{1, 2};

    friend bool operator==(const GaussPoly&, const GaussPoly&) = default;
};

namespace detail {

inline void same_alpha(const GaussPoly& a, const GaussPoly& b) {
    if (a.alpha != b.alpha) throw DomainError("GaussPoly: Gaussian exponents differ");
}

} // namespace detail

[[nodiscard]] inline GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) {
    detail::same_alpha(a, b);
    return {a.poly + b.poly, a.alpha};
}
[[nodiscard]] inline GaussPoly operator-(const GaussPoly& a, const GaussPoly& b) {
    detail::same_alpha(a, b);
    return {a.poly - b.poly, a.alpha};
}
[[nodiscard]] inline GaussPoly operator*(const Rational& c, const GaussPoly& f) { return {f.poly * c, f.alpha}; }

[[nodiscard]] inline GaussPoly d_z(const GaussPoly& f) {
    return {f.poly.d_z() - f.poly.times_zbar() * f.alpha, f.alpha};
}
[[nodiscard]] inline GaussPoly d_zbar(const GaussPoly& f) {
    return {f.poly.d_zbar() - f.poly.times_z() * f.alpha, f.alpha};
}
[[nodiscard]] inline GaussPoly times_z(const GaussPoly& f) { return {f.poly.times_z(), f.alpha}; }
[[nodiscard]] inline GaussPoly times_zbar(const GaussPoly& f) { return {f.poly.times_zbar(), f.alpha}; }

namespace detail {

inline GaussPoly landau_impl(const GaussPoly& f, const Rational& sign) {
    const GaussPoly mixed = d_z(d_zbar(f));
    const GaussPoly rot = times_z(d_z(f)) - times_zbar(d_zbar(f));
    const GaussPoly radial = times_z(times_zbar(f));
    return Rational{-1, 4} * (Rational{4} * mixed + Rational{2} * sign * rot - radial);
}

} // namespace detail

[[nodiscard]] inline GaussPoly landau_apply(const GaussPoly& f) { return detail::landau_impl(f, 1); }

/// The z <-> zbar mirror of L (rotation term with opposite sign).
[[nodiscard]] inline GaussPoly landau_conj_apply(const GaussPoly& f) { return detail::landau_impl(f, -1); }

/// lambda with L f = lambda f exactly, or nullopt when f is zero or not an eigenfunction.
[[nodiscard]] inline std::optional<Rational> landau_eigenvalue(const GaussPoly& f) {
    if (f.poly.is_zero()) return std::nullopt;
    const GaussPoly g = landau_apply(f);
    const auto& [e, c] = *f.poly.terms().begin();
    const Rational lambda = g.poly.coeff(e.first, e.second) / c;
    if (g.poly != f.poly * lambda) return std::nullopt;
    return lambda;
}

/// exp(-|z|^2/2) h_{n,m}(z, zbar)
[[nodiscard]] inline GaussPoly landau_state(unsigned n, unsigned m) {
    return {to_rational(h_nm_poly(n, m)), Rational{1, 2}};
}

/// Which index of h_{n,m} carries the Landau level.
enum class LandauIndex { First, Second };

/// exp(-|z|^2/2) h_{n,m} has eigenvalue n + 1/2: the level is the zbar degree.
inline constexpr LandauIndex landau_level_index = LandauIndex::First;

[[nodiscard]] constexpr unsigned landau_level(unsigned n, unsigned m) {
    return landau_level_index == LandauIndex::First ? n : m;
}

} // namespace qherm
