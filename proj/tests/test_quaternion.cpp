#include <catch_amalgamated.hpp>

#include <numbers>

#include "qherm/quaternion.hpp"
#include "test_support.hpp"

using namespace qherm;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("Hamilton product table", "[quat-core]") {
    CHECK(units::i * units::j == units::k);
    CHECK(units::j * units::i == -units::k);
    CHECK(units::j * units::k == units::i);
    CHECK(units::k * units::i == units::j);
    CHECK(units::i * units::i == Quaternion{-1.0});

    const Quaternion q{0.3, -1.2, 2.5, 0.7};
    CHECK(q * units::one == q);
    CHECK(units::one * q == q);

    // (1 + i)(1 + j) = 1 + j + i + ij
    CHECK((Quaternion{1, 1, 0, 0} * Quaternion{1, 0, 1, 0}) == Quaternion{1, 1, 1, 1});
}

TEST_CASE("conjugate and norm", "[quat-core]") {
    CHECK(conj(Quaternion{1, 1, 1, 1}) == Quaternion{1, -1, -1, -1});
    CHECK(norm(Quaternion{1, 1, 1, 1}) == 2.0);
    CHECK(norm(Quaternion{}) == 0.0);

    testing::Sampler rng(11);
    for (int n = 0; n < 500; ++n) {
        const Quaternion p = rng.quaternion(2.0);
        const Quaternion q = rng.quaternion(2.0);
        CHECK(norm(p * q) == Approx(norm(p) * norm(q)).epsilon(1e-13));
        CHECK(conj(conj(q)) == q);
        CHECK(approx_equal(conj(p * q), conj(q) * conj(p)));
        const Quaternion n2 = conj(q) * q;
        CHECK(n2.x0 == Approx(norm2(q)).epsilon(1e-14));
        CHECK(norm(n2.imag()) < 1e-12);
    }
}

TEST_CASE("product is associative but not commutative", "[quat-core]") {
    testing::Sampler rng(12);
    for (int n = 0; n < 200; ++n) {
        const Quaternion a = rng.quaternion();
        const Quaternion b = rng.quaternion();
        const Quaternion c = rng.quaternion();
        CHECK(approx_equal((a * b) * c, a * (b * c), {1e-12, 1e-13}));
    }
    CHECK_FALSE(approx_equal(units::i * units::j, units::j * units::i));
}

TEST_CASE("matrix representation", "[quat-core]") {
    CHECK(max_abs_diff(to_matrix(units::one), Mat2::identity()) == 0.0);

    const Mat2 mi = to_matrix(units::i);
    CHECK(mi(0, 0) == Complex{});
    CHECK(mi(0, 1) == Complex(0, 1));
    CHECK(mi(1, 0) == Complex(0, 1));
    CHECK(mi(1, 1) == Complex{});

    testing::Sampler rng(13);
    for (int n = 0; n < 500; ++n) {
        const Quaternion p = rng.quaternion();
        const Quaternion q = rng.quaternion();
        const Mat2 m = to_matrix(q);
        CHECK(from_matrix(m) == q);
        CHECK(max_abs_diff(to_matrix(p * q), to_matrix(p) * m) < 1e-14);
        CHECK(max_abs_diff(to_matrix(conj(q)), m.adjoint()) == 0.0);
        CHECK(m.trace().real() == Approx(2.0 * q.x0));
        CHECK(max_abs_diff(m.adjoint() * m, Mat2::diag(norm2(q), norm2(q))) < 1e-13);
    }
}

TEST_CASE("from_matrix rejects non-quaternionic matrices", "[quat-core]") {
    Mat2 m = to_matrix(Quaternion{1, 2, 3, 4});
    m(1, 1) += Complex(0.5, 0.0);
    CHECK_THROWS_AS(from_matrix(m), PatternViolation);
    CHECK_NOTHROW(from_matrix(m, {1.0, 0.0}));
}

TEST_CASE("polar form", "[quat-core]") {
    const PolarForm pi_form = polar(units::i);
    CHECK(pi_form.r == 1.0);
    CHECK(pi_form.theta == Approx(pi / 2));
    CHECK(pi_form.phi == Approx(pi / 2));
    CHECK(pi_form.psi == 0.0);

    const PolarForm minus_one = polar(Quaternion{-1.0});
    CHECK(minus_one.r == 1.0);
    CHECK(minus_one.theta == Approx(pi));
    CHECK(minus_one.phi == 0.0);
    CHECK(minus_one.psi == 0.0);

    const PolarForm zero = polar(Quaternion{});
    CHECK(zero.r == 0.0);
    CHECK(zero.theta == 0.0);

    testing::Sampler rng(14);
    for (int n = 0; n < 1000; ++n) {
        const Quaternion q = rng.quaternion(3.0);
        const PolarForm p = polar(q);
        CHECK(p.theta >= 0.0);
        CHECK(p.theta <= pi);
        CHECK(p.phi <= pi);
        CHECK(p.psi < 2 * pi);
        CHECK(norm(from_polar(p) - q) < 1e-12);
    }
}

TEST_CASE("polar factors commute and square to identity", "[quat-core]") {
    testing::Sampler rng(15);
    for (int n = 0; n < 200; ++n) {
        const Quaternion q = rng.quaternion(2.0);
        const PolarForm p = polar(q);
        const Mat2 a = polar_amplitude(p);
        const Mat2 s = polar_axis(p);
        CHECK(max_abs_diff(s * s, Mat2::identity()) < 1e-12);
        CHECK(max_abs_diff(s.adjoint(), s) < 1e-12);
        CHECK(max_abs_diff(a.adjoint(), a) < 1e-12);
        CHECK(max_abs_diff(a * s, s * a) < 1e-12);
        // exp(i theta S) = cos(theta) + i sin(theta) S because S^2 = 1
        const Mat2 rotation = Mat2::diag(std::cos(p.theta), std::cos(p.theta)) +
                              Complex(0.0, std::sin(p.theta)) * s;
        CHECK(max_abs_diff(a * rotation, to_matrix(q)) < 1e-12);
    }
}

TEST_CASE("slice decomposition", "[quat-core]") {
    const SliceForm f = slice_decompose(Quaternion{1, 1, 1, 1});
    CHECK(f.x == 1.0);
    CHECK(f.y == Approx(std::sqrt(3.0)));
    CHECK(f.I.x1() == Approx(1.0 / std::sqrt(3.0)));
    CHECK(f.I.x2() == Approx(1.0 / std::sqrt(3.0)));
    CHECK(f.I.x3() == Approx(1.0 / std::sqrt(3.0)));
    CHECK(norm(f.I.as_quaternion() * f.I.as_quaternion() + 1.0) < 1e-15);

    const SliceForm real = slice_decompose(Quaternion{5.0});
    CHECK(real.x == 5.0);
    CHECK(real.y == 0.0);
    CHECK(real.I.as_quaternion() == units::i);

    testing::Sampler rng(16);
    for (int n = 0; n < 1000; ++n) {
        const Quaternion q = rng.quaternion(2.0);
        const SliceForm s = slice_decompose(q);
        CHECK(s.y > 0.0);
        CHECK(norm(s.reconstruct() - q) < 1e-14);
    }
}

TEST_CASE("unit imaginary validation", "[quat-core]") {
    CHECK_THROWS_AS(UnitImaginary::make(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(UnitImaginary::normalized(0.0, 0.0, 0.0), DomainError);
    CHECK(UnitImaginary::make(0.0, 1.0, 0.0).dot(UnitImaginary{}) == 0.0);
}

namespace {

// Eigenvalues of a 2x2 matrix from its characteristic polynomial.
std::pair<Complex, Complex> char_poly_eigenvalues(const Mat2& m) {
    const Complex half_trace = 0.5 * m.trace();
    const Complex disc = std::sqrt(half_trace * half_trace - m.det());
    return {half_trace + disc, half_trace - disc};
}

} // namespace

TEST_CASE("su2 factorisation", "[quat-core]") {
    const SU2Factor fi = su2_factor(units::i);
    CHECK(std::abs(fi.z - Complex(0, 1)) < 1e-15);
    CHECK(max_abs_diff(fi.reconstruct(), to_matrix(units::i)) < 1e-15);

    const SU2Factor f3 = su2_factor(Quaternion{3.0});
    CHECK(f3.z == Complex(3.0));
    CHECK(max_abs_diff(f3.u, Mat2::identity()) == 0.0);

    testing::Sampler rng(17);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const Quaternion q = rng.quaternion(1.0);
        const SU2Factor f = su2_factor(q);
        worst = std::max(worst, max_abs_diff(f.reconstruct(), to_matrix(q)));
        CHECK(f.z.imag() >= 0.0);
        CHECK(std::abs(f.u.det() - 1.0) < 1e-13);
        CHECK(max_abs_diff(f.u * f.u.adjoint(), Mat2::identity()) < 1e-13);
        if (n < 100) {
            const auto [l0, l1] = char_poly_eigenvalues(to_matrix(q));
            const Complex upper = l0.imag() >= l1.imag() ? l0 : l1;
            CHECK(std::abs(upper - f.z) < 1e-12);
        }
    }
    CHECK(worst <= 1e-12);

    // q^i conj(q)^j = u diag(z^i zbar^j, zbar^i z^j) u^+
    const Quaternion q{0.4, -0.3, 0.8, 0.2};
    const SU2Factor f = su2_factor(q);
    const Complex z = f.z;
    const Mat2 lhs = to_matrix(qpow(q, 3) * qpow(conj(q), 2));
    const Mat2 rhs = f.conjugate_diag(std::pow(z, 3) * std::pow(std::conj(z), 2),
                                      std::pow(std::conj(z), 3) * std::pow(z, 2));
    CHECK(max_abs_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("polar u_q needs a quarter-turn phase shift", "[quat-core]") {
    testing::Sampler rng(18);
    double worst_shifted = 0.0;
    double best_unshifted = 1e9;
    for (int n = 0; n < 500; ++n) {
        const Quaternion q = rng.quaternion(1.0);
        const double sin_part = norm(q.imag()) * std::abs(std::sin(polar(q).phi));
        worst_shifted = std::max(worst_shifted, polar_uq_residual(q, pi / 2));
        if (sin_part > 0.3) best_unshifted = std::min(best_unshifted, polar_uq_residual(q));
        const Mat2 u = polar_uq(polar(q).phi, polar(q).psi, polar(q).psi);
        CHECK(std::abs(u.det() - 1.0) < 1e-14);
    }
    CHECK(worst_shifted < 1e-12);
    CHECK(best_unshifted > 0.1);
}

TEST_CASE("quaternion exponential", "[quat-core]") {
    CHECK(q_exp(Quaternion{}) == units::one);
    CHECK(norm(q_exp(pi * units::i) + 1.0) < 1e-14);
    CHECK_THROWS_AS(q_exp(units::i, 0.0), DomainError);

    testing::Sampler rng(19);
    for (int n = 0; n < 200; ++n) {
        const Quaternion q = rng.quaternion(1.0);
        const SliceForm s = slice_decompose(q);
        const Quaternion closed = std::exp(s.x) * (std::cos(s.y) + std::sin(s.y) * s.I.as_quaternion());
        CHECK(approx_equal(q_exp(q), closed, {1e-12, 1e-13}));
    }
}

TEST_CASE("mul_conj", "[quat-core]") {
    testing::Sampler rng(20);
    for (int n = 0; n < 1000; ++n) {
        const Quaternion a = rng.quaternion();
        const Quaternion b = rng.quaternion();
        CHECK(approx_equal(mul_conj(a, b), a * conj(b), {1e-14, 1e-14}));
        CHECK(mul_conj(b, a) == conj(mul_conj(a, b)));
    }
}
