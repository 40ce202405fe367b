#include <catch_amalgamated.hpp>

#include <numbers>

#include "qherm/kernels.hpp"
#include "test_support.hpp"

using namespace qherm;
using Catch::Approx;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("K_s at the origin", "[kernels]") {
    const KernelValue k = K_s_series(Quaternion{}, Quaternion{}, 0.5, std::size_t{60});
    CHECK(std::abs(k.value.x0 - 0.75 / pi) < 1e-9);
    CHECK(norm(k.value.imag()) == 0.0);
    CHECK(k.truncation == 60);
    CHECK(std::abs(K_s_closed_complex(0.0, 0.0, 0.5) - 0.75 / pi) < 1e-15);
    CHECK(frak_K_closed(0.0, 0.0, 0.3).real() == Approx((1 - 0.09) / (2 * pi * 0.3)).epsilon(1e-15));
}

TEST_CASE("K_s hermiticity and diagonal structure", "[kernels]") {
    testing::Sampler rng(41);
    const double s = 0.5;
    double worst_off = 0.0;
    double worst_diag = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = rng.in_ball(1.5);
        const Quaternion p = rng.in_ball(1.5);
        const KernelValue a = K_s_series(q, p, s);
        const KernelValue b = K_s_series(p, q, s);
        CHECK(a.value == conj(b.value));
        CHECK(a.converged);

        const KernelValue d = K_s_series(q, q, s);
        const Mat2 m = to_matrix(d.value);
        worst_off = std::max({worst_off, std::abs(m(0, 1)), std::abs(m(1, 0)), std::abs(m(0, 0) - m(1, 1))});
        worst_diag = std::max(worst_diag, rel(m(0, 0).real(), K_s_diag(q, s)));
        CHECK(m(0, 0).real() > 0.0);
    }
    CHECK(worst_off <= 1e-10);
    CHECK(worst_diag <= 1e-9);
}

TEST_CASE("candidate diagonal formula disagrees with the closed form", "[kernels]") {
    const double s = 0.5;
    const Complex z{0.7, 0.4};
    const double series = K_s_series_complex(z, z, s).value.real();
    CHECK(series == Approx(0.357932).epsilon(1e-6));
    CHECK(K_s_diag(z, s) == Approx(series).epsilon(1e-12));
    CHECK(K_s_closed_complex(z, z, s).real() == Approx(series).epsilon(1e-12));
    CHECK(K_s_diag_candidate(z, s) == Approx(0.304248).epsilon(1e-6));
    // real z: both formulas must then agree with the closed form only on the x-axis term
    CHECK(K_s_diag(Complex{0.9, 0.0}, s) == Approx(K_s_closed_complex(0.9, 0.9, s).real()).epsilon(1e-14));
}

TEST_CASE("closed forms against series", "[kernels]") {
    testing::Sampler rng(42);
    const double s = 0.5;
    double worst_k = 0.0;
    double worst_f = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Complex z = rng.in_disc(1.5);
        const Complex w = rng.in_disc(1.5);
        worst_k = std::max(worst_k, rel(K_s_series_complex(z, w, s).value, K_s_closed_complex(z, w, s)));
        worst_f = std::max(worst_f, rel(frak_K_series(z, w, s).value, frak_K_closed(z, w, s)));
        CHECK(rel(frak_K_closed(z, z, s).real(), frak_K_diag(z, s)) < 1e-13);
        CHECK(std::abs(frak_K_closed(z, z, s).imag()) < 1e-13 * frak_K_diag(z, s));
    }
    CHECK(worst_k <= 1e-9);
    CHECK(worst_f <= 1e-9);
    for (double s2 : {0.2, 0.8}) {
        const Complex z{0.3, -0.9};
        const Complex w{-1.1, 0.2};
        CHECK(rel(K_s_series_complex(z, w, s2).value, K_s_closed_complex(z, w, s2)) <= 1e-9);
    }
}

TEST_CASE("quaternionic K_s agrees with the complex kernel on a slice", "[kernels]") {
    const UnitImaginary I = UnitImaginary::normalized(0.3, -0.4, 0.8);
    const Complex z{0.5, -0.2};
    const Complex w{-0.1, 0.9};
    const Quaternion v = K_s_series(on_slice(z, I), on_slice(w, I), 0.5).value;
    CHECK(norm(v - on_slice(K_s_closed_complex(z, w, 0.5), I)) < 1e-12);
}

TEST_CASE("truncation behaviour", "[kernels]") {
    const Quaternion q{0.6, -0.4, 0.9, 0.3};
    double prev = 0.0;
    for (std::size_t N = 0; N <= 40; ++N) {
        const double v = K_s_series(q, q, 0.5, N).value.x0;
        CHECK(v >= prev);
        prev = v;
    }
    const KernelValue growing = bargmann_kernel(Quaternion{3.0}, Quaternion{3.0}, std::size_t{3});
    CHECK_FALSE(growing.converged);
    const KernelValue settled = bargmann_kernel(Quaternion{3.0}, Quaternion{3.0});
    CHECK(settled.converged);
    CHECK(settled.est_tail < 1e-12 * settled.value.x0);
    CHECK(settled.truncation < 200);

    CHECK_THROWS_AS(K_s_series(Quaternion{30.0}, Quaternion{}, 0.5), DomainError);
    CHECK_THROWS_AS(bargmann_kernel(Quaternion{0, 20, 0, 0}, Quaternion{}), DomainError);
    CHECK_THROWS_AS(K_s_series(Quaternion{}, Quaternion{}, 1.0), DomainError);
}

TEST_CASE("canonical kernels", "[kernels]") {
    testing::Sampler rng(43);
    CHECK(K_n_series(Quaternion{}, Quaternion{}, 0).value == units::one);
    CHECK(bargmann_kernel(Quaternion{}, rng.quaternion()).value == units::one);
    CHECK(bargmann_kernel(rng.quaternion(), Quaternion{}).value == units::one);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = rng.in_ball(1.5);
        const double e = std::exp(norm2(q));
        worst = std::max(worst, norm(K_n_series(q, q, 0).value - Quaternion{e}) / e);
        CHECK(norm(bargmann_kernel(q, q).value - Quaternion{e}) <= 1e-12 * e);

        const Quaternion p = rng.in_ball(1.5);
        CHECK(norm(K_n_series(q, p, 0).value - bargmann_kernel(q, p).value) <= 1e-12 * e);
        for (unsigned n = 0; n <= 3; ++n) {
            CHECK(norm(K_n_series(q, p, n).value - conj(K_n_series(p, q, n).value)) <= 1e-14 * e);
            CHECK(K_n_series(q, q, n).value.x0 > 0.0);
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("Bargmann kernel is not exp(q1 conj q2)", "[kernels]") {
    const Quaternion series = bargmann_kernel(units::i, units::j, std::size_t{20}).value;
    const Quaternion naive = q_exp(units::i * conj(units::j));
    CHECK(norm(series - naive) > 0.1);
    // i^n (-j)^n summed directly
    Quaternion direct{};
    double f = 1.0;
    for (unsigned n = 0; n <= 20; ++n) {
        if (n > 0) f /= n;
        direct += f * (qpow(units::i, n) * qpow(-units::j, n));
    }
    CHECK(norm(series - direct) < 1e-15);
}

TEST_CASE("evaluation bound", "[kernels]") {
    testing::Sampler rng(44);
    for (int t = 0; t < 100; ++t) {
        const Quaternion x = rng.in_ball(1.5);
        const std::size_t M = 6;
        std::vector<Quaternion> f(M);
        double f_norm2 = 0.0;
        for (auto& c : f) {
            c = rng.quaternion();
            f_norm2 += norm2(c);
        }
        const auto phi = h_nm_normalized_row(0, M - 1, x);
        Quaternion Fx{};
        for (std::size_t m = 0; m < M; ++m) Fx += f[m] * conj(phi[m]);
        CHECK(norm(Fx) <= std::sqrt(K_n_series(x, x, 0).value.x0 * f_norm2) * (1 + 1e-12));
    }
}

TEST_CASE("reproducing property by quadrature", "[kernels]") {
    const QuadratureSpec spec = gauss_spec(40, 4, 4);
    const KernelFn K0 = [](const Quaternion& y, const Quaternion& x) { return bargmann_kernel(y, x).value; };
    const std::vector<Quaternion> xs{{0.3, 0.1, -0.2, 0.4}, {-0.5, 0.7, 0.0, 0.2}, {1.0, -0.3, 0.5, -0.6}};

    const ReproducingReport one = reproducing_check(K0, [](const Quaternion&) { return units::one; }, spec, xs);
    CHECK(one.max_error <= 1e-6);
    CHECK(one.samples == 3);

    const ReproducingReport zero = reproducing_check(K0, [](const Quaternion&) { return Quaternion{}; }, spec, xs);
    CHECK(zero.max_error == 0.0);

    const std::vector<Quaternion> f{{0.2, 1.0, 0.0, -0.3}, {0.5, -0.2, 0.4, 0.1}, {-0.7, 0.0, 0.3, 0.9}};
    const QFunction F = [&](const Quaternion& y) {
        const auto phi = h_nm_normalized_row(0, 2, y);
        Quaternion v{};
        for (std::size_t m = 0; m < f.size(); ++m) v += f[m] * conj(phi[m]);
        return v;
    };
    CHECK(reproducing_check(K0, F, spec, xs).max_error <= 1e-6);

    const std::vector<std::pair<Quaternion, Quaternion>> pairs{{xs[0], xs[1]}, {xs[2], xs[0]}};
    CHECK(idempotence_check(K0, spec, pairs).max_error <= 1e-6);
}
