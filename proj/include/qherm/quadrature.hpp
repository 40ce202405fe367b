#pragma once

/**
 * @file quadrature.hpp
 * @brief Tensor Gauss rules for the planar Gaussian measures and a Haar rule on SU(2),
 * composed into rules on H through q = u diag(z, conj z) u^+.
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/hermite.hpp"
#include "qherm/parallel.hpp"
#include "qherm/quaternion.hpp"

namespace qherm {

enum class WeightKind { GaussHermite, GaussLegendre, Trapezoid };

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    WeightKind kind = WeightKind::GaussHermite;
    double alpha = 1.0;  ///< GaussHermite only

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
    [[nodiscard]] double total() const {
        double t = 0.0;
        for (double w : weights) t += w;
        return t;
    }
    template <class F>
    [[nodiscard]] auto integrate(F&& f) const {
        decltype(f(0.0) * 1.0) sum{};
        for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
        return sum;
    }
};

/// Nodes and weights for int exp(-alpha x^2) f(x) dx; exact for degree <= 2n-1.
[[nodiscard]] inline Rule1D gauss_hermite(std::size_t n, double alpha = 1.0) {
    if (n < 1) throw DomainError("gauss_hermite: n must be >= 1");
    if (!(alpha > 0.0)) throw DomainError("gauss_hermite: alpha must be positive");

    // Newton on the orthonormal Hermite recursion for weight exp(-t^2).
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    std::vector<double> t(n), w(n);
    const std::size_t half = (n + 1) / 2;
    const auto eval = [&](double z, double& pp) {
        double p1 = pim4;
        double p2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
        }
        pp = std::sqrt(2.0 * n) * p2;
        return p1;
    };
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        const double dn = static_cast<double>(n);
        if (i == 0) z = std::sqrt(2 * dn + 1) - 1.85575 * std::pow(2 * dn + 1, -0.16667);
        else if (i == 1) z -= 1.14 * std::pow(dn, 0.426) / z;
        else if (i == 2) z = 1.86 * z - 0.86 * t[0];
        else if (i == 3) z = 1.91 * z - 0.91 * t[1];
        else z = 2.0 * z - t[i - 2];

        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const double dz = eval(z, pp) / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-14 * std::max(1.0, std::abs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConvergenceFailure("gauss_hermite: Newton iteration did not converge");
        z -= eval(z, pp) / pp;
        eval(z, pp);
        t[i] = z;
        w[i] = 2.0 / (pp * pp);
    }

    Rule1D r{std::vector<double>(n), std::vector<double>(n), WeightKind::GaussHermite, alpha};
    const double scale = 1.0 / std::sqrt(alpha);
    for (std::size_t i = 0; i < half; ++i) {
        r.nodes[i] = -t[i] * scale;
        r.nodes[n - 1 - i] = t[i] * scale;
        r.weights[i] = w[i] * scale;
        r.weights[n - 1 - i] = w[i] * scale;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

/// Gauss-Legendre on [-1, 1].
[[nodiscard]] inline Rule1D gauss_legendre(std::size_t n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    Rule1D r{std::vector<double>(n), std::vector<double>(n), WeightKind::GaussLegendre, 0.0};
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConvergenceFailure("gauss_legendre: Newton iteration did not converge");
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

/// Periodic trapezoid on [0, period): equal weights period / n.
[[nodiscard]] inline Rule1D trapezoid_periodic(std::size_t n, double period = 2.0 * std::numbers::pi) {
    if (n < 1) throw DomainError("trapezoid_periodic: n must be >= 1");
    Rule1D r{{}, std::vector<double>(n, period / n), WeightKind::Trapezoid, 0.0};
    for (std::size_t k = 0; k < n; ++k) r.nodes.push_back(period * k / n);
    return r;
}

// ---------------------------------------------------------------------------
// Planar rules
// ---------------------------------------------------------------------------

enum class MeasureKind {
    Nu,          ///< exp[-(1-s)x^2 - (1/s - 1)y^2] dx dy
    MuS,         ///< the same weight, used as the measure of the s-family on H
    GaussLambda  ///< exp(-|z|^2) d^2z / pi, mass 1
};

[[nodiscard]] inline std::string to_string(MeasureKind k) {
    switch (k) {
    case MeasureKind::Nu: return "nu";
    case MeasureKind::MuS: return "mu_s";
    case MeasureKind::GaussLambda: return "gauss_lambda";
    }
    return "?";
}

struct PlanarRule {
    Rule1D x;
    Rule1D y;
    MeasureKind kind = MeasureKind::GaussLambda;
    double s = 0.0;    ///< only for Nu / MuS
    double scale = 1.0; ///< extra constant factor folded into every weight

    [[nodiscard]] std::size_t size() const { return x.size() * y.size(); }
    [[nodiscard]] Complex node(std::size_t k) const { return {x.nodes[k / y.size()], y.nodes[k % y.size()]}; }
    [[nodiscard]] double weight(std::size_t k) const {
        return scale * x.weights[k / y.size()] * y.weights[k % y.size()];
    }
    [[nodiscard]] double total_mass() const { return scale * x.total() * y.total(); }
};

inline constexpr std::size_t default_planar_order = 80;

[[nodiscard]] inline PlanarRule nu_rule(double s, std::size_t order = default_planar_order,
                                        MeasureKind kind = MeasureKind::Nu) {
    check_s(s);
    return {gauss_hermite(order, 1.0 - s), gauss_hermite(order, 1.0 / s - 1.0), kind, s, 1.0};
}

[[nodiscard]] inline PlanarRule mu_s_rule(double s, std::size_t order = default_planar_order) {
    return nu_rule(s, order, MeasureKind::MuS);
}

[[nodiscard]] inline PlanarRule gauss_lambda_rule(std::size_t order = 40) {
    return {gauss_hermite(order), gauss_hermite(order), MeasureKind::GaussLambda, 0.0, 1.0 / std::numbers::pi};
}

/// Total mass of the planar measure in closed form.
[[nodiscard]] inline double planar_mass(MeasureKind kind, double s) {
    if (kind == MeasureKind::GaussLambda) return 1.0;
    return std::numbers::pi / std::sqrt((1.0 - s) * (1.0 / s - 1.0));
}

// ---------------------------------------------------------------------------
// SU(2)
// ---------------------------------------------------------------------------

/// Unit imaginary with coordinates (sin phi cos psi, sin phi sin psi, cos phi).
[[nodiscard]] inline Quaternion axis_quaternion(double phi, double psi) {
    return {0.0, std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi), std::cos(phi)};
}

/// ZYZ-type Euler parametrization, alpha in [0, 2pi), beta in [0, pi], gamma in [0, 4pi).
[[nodiscard]] inline Mat2 su2_euler(double alpha, double beta, double gamma) {
    const double c = std::cos(beta / 2.0);
    const double s = std::sin(beta / 2.0);
    return {{std::polar(c, (alpha + gamma) / 2.0), std::polar(s, (alpha - gamma) / 2.0),
             -std::polar(s, -(alpha - gamma) / 2.0), std::polar(c, -(alpha + gamma) / 2.0)}};
}

struct SU2Rule {
    std::vector<Mat2> u;
    std::vector<Quaternion> axis;  ///< u diag(i, -i) u^+ as a unit imaginary quaternion
    std::vector<double> weights;
    bool full_euler = false;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
    [[nodiscard]] double total() const {
        double t = 0.0;
        for (double w : weights) t += w;
        return t;
    }
};

/// Gauss-Legendre in cos(phi) times a periodic trapezoid in psi, weight sin(phi)/(4 pi).
[[nodiscard]] inline SU2Rule haar_su2(std::size_t n_phi = 8, std::size_t n_psi = 8) {
    if (n_phi < 2 || n_psi < 2) throw DomainError("haar_su2: need at least 2 nodes per angle");
    const Rule1D t = gauss_legendre(n_phi);
    const Rule1D p = trapezoid_periodic(n_psi);
    SU2Rule r;
    for (std::size_t a = 0; a < t.size(); ++a) {
        const double phi = std::acos(t.nodes[a]);
        for (std::size_t b = 0; b < p.size(); ++b) {
            const Quaternion n = axis_quaternion(phi, p.nodes[b]);
            r.axis.push_back(n);
            r.u.push_back(su2_factor(n).u);
            r.weights.push_back(t.weights[a] * p.weights[b] / (4.0 * std::numbers::pi));
        }
    }
    return r;
}

/// Full three-angle Haar rule, density sin(beta) / (16 pi^2).
[[nodiscard]] inline SU2Rule haar_su2_full(std::size_t n_alpha = 8, std::size_t n_beta = 8, std::size_t n_gamma = 8) {
    if (n_alpha < 2 || n_beta < 2 || n_gamma < 2) throw DomainError("haar_su2_full: need at least 2 nodes per angle");
    const Rule1D ra = trapezoid_periodic(n_alpha);
    const Rule1D rb = gauss_legendre(n_beta);
    const Rule1D rg = trapezoid_periodic(n_gamma, 4.0 * std::numbers::pi);
    SU2Rule r;
    r.full_euler = true;
    const Mat2 spin = Mat2::diag(Complex{0.0, 1.0}, Complex{0.0, -1.0});
    for (std::size_t a = 0; a < ra.size(); ++a) {
        for (std::size_t b = 0; b < rb.size(); ++b) {
            for (std::size_t g = 0; g < rg.size(); ++g) {
                const Mat2 u = su2_euler(ra.nodes[a], std::acos(rb.nodes[b]), rg.nodes[g]);
                r.u.push_back(u);
                r.axis.push_back(from_matrix(u * spin * u.adjoint(), {1e-12, 1e-12}));
                r.weights.push_back(ra.weights[a] * rb.weights[b] * rg.weights[g] /
                                    (16.0 * std::numbers::pi * std::numbers::pi));
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Composite rules and integration
// ---------------------------------------------------------------------------

/// Product of a planar rule and an SU(2) rule: q = Re z + Im z * axis.
struct QuadratureSpec {
    PlanarRule planar;
    SU2Rule su2;

    [[nodiscard]] std::size_t size() const { return planar.size() * su2.size(); }
    /// SU(2) index outer, planar index inner.
    [[nodiscard]] Quaternion node(std::size_t k) const {
        const Complex z = planar.node(k % planar.size());
        return z.real() + z.imag() * su2.axis[k / planar.size()];
    }
    [[nodiscard]] double weight(std::size_t k) const {
        return su2.weights[k / planar.size()] * planar.weight(k % planar.size());
    }
};

/// d mu_s d omega
[[nodiscard]] inline QuadratureSpec eta_spec(double s, std::size_t order = default_planar_order, std::size_t n_phi = 8,
                                             std::size_t n_psi = 8) {
    return {mu_s_rule(s, order), haar_su2(n_phi, n_psi)};
}

/// exp(-|z|^2) d lambda d omega
[[nodiscard]] inline QuadratureSpec gauss_spec(std::size_t order = 40, std::size_t n_phi = 8, std::size_t n_psi = 8) {
    return {gauss_lambda_rule(order), haar_su2(n_phi, n_psi)};
}

namespace detail {

template <class T>
void add_into(T& total, const T& part) {
    total += part;
}

} // namespace detail

/// sum_k w_k f(z_k) in row-major node order.
template <class F>
[[nodiscard]] auto integrate_C(F&& f, const PlanarRule& rule) {
    using T = std::decay_t<decltype(f(Complex{}))>;
    return ordered_reduce(
        rule.size(), T{}, [&](std::size_t k, T& acc) { acc += rule.weight(k) * f(rule.node(k)); },
        detail::add_into<T>);
}

template <class F>
[[nodiscard]] auto integrate_H(F&& f, const QuadratureSpec& spec) {
    using T = std::decay_t<decltype(f(Quaternion{}))>;
    return ordered_reduce(
        spec.size(), T{}, [&](std::size_t k, T& acc) { acc += spec.weight(k) * f(spec.node(k)); },
        detail::add_into<T>);
}

/// Matrix form of integrate_H: the integral of to_matrix(f(q)).
template <class F>
[[nodiscard]] Mat2 integrate_H_matrix(F&& f, const QuadratureSpec& spec) {
    return integrate_H([&](const Quaternion& q) { return to_matrix(f(q)); }, spec);
}

/**
 * Gram matrix G_ij = int f_i conj(f_j) over the spec, where values(q, out) writes
 * f_0(q)..f_{k-1}(q) into out. Returned row-major, k*k entries.
 */
template <class Values>
[[nodiscard]] std::vector<Quaternion> gram_H(Values&& values, std::size_t k, const QuadratureSpec& spec) {
    struct Acc {
        std::vector<Quaternion> g;
        std::vector<Quaternion> scratch;
    };
    const Acc zero{std::vector<Quaternion>(k * k), std::vector<Quaternion>(k)};
    Acc total = ordered_reduce(
        spec.size(), zero,
        [&](std::size_t n, Acc& acc) {
            values(spec.node(n), acc.scratch);
            const double w = spec.weight(n);
            for (std::size_t i = 0; i < k; ++i) {
                const Quaternion wi = w * acc.scratch[i];
                for (std::size_t j = 0; j < k; ++j) acc.g[i * k + j] += wi * conj(acc.scratch[j]);
            }
        },
        [k](Acc& t, const Acc& p) {
            for (std::size_t i = 0; i < k * k; ++i) t.g[i] += p.g[i];
        });
    return total.g;
}

/// Complex analogue of gram_H over a planar rule.
template <class Values>
[[nodiscard]] std::vector<Complex> gram_C(Values&& values, std::size_t k, const PlanarRule& rule) {
    struct Acc {
        std::vector<Complex> g;
        std::vector<Complex> scratch;
    };
    const Acc zero{std::vector<Complex>(k * k), std::vector<Complex>(k)};
    Acc total = ordered_reduce(
        rule.size(), zero,
        [&](std::size_t n, Acc& acc) {
            values(rule.node(n), acc.scratch);
            const double w = rule.weight(n);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) acc.g[i * k + j] += w * acc.scratch[i] * std::conj(acc.scratch[j]);
            }
        },
        [k](Acc& t, const Acc& p) {
            for (std::size_t i = 0; i < k * k; ++i) t.g[i] += p.g[i];
        });
    return total.g;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct MCEstimate {
    Quaternion mean;
    double std_error = 0.0;  ///< of the mean, Euclidean over the 4 components
    std::size_t samples = 0;
};

/// Monte Carlo over exp(-|z|^2) d lambda d omega: x, y ~ N(0, 1/2), axis uniform on the sphere.
template <class F>
[[nodiscard]] MCEstimate mc_integrate_H(F&& f, std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw DomainError("mc_integrate_H: need at least 2 samples");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> planar(0.0, std::sqrt(0.5));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Quaternion sum{};
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double x = planar(rng);
        const double y = planar(rng);
        Quaternion n{0.0, gauss(rng), gauss(rng), gauss(rng)};
        while (norm(n) == 0.0) n = {0.0, gauss(rng), gauss(rng), gauss(rng)};
        n = n / norm(n);
        const Quaternion v = f(x + y * n);
        sum += v;
        sum_sq += norm2(v);
    }
    const double m = static_cast<double>(samples);
    MCEstimate e;
    e.mean = sum / m;
    e.samples = samples;
    const double var = std::max(0.0, (sum_sq / m - norm2(e.mean)) * m / (m - 1.0));
    e.std_error = std::sqrt(var / m);
    return e;
}

} // namespace qherm
