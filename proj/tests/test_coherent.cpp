#include <catch_amalgamated.hpp>

#include "qherm/coherent.hpp"
#include "test_support.hpp"

using namespace qherm;

namespace {

const std::vector<FrameFunctions>& families() {
    static const std::vector<FrameFunctions> all{FrameFunctions::canonical(), FrameFunctions::canonical(true),
                                                 FrameFunctions::hermite_s(0.5), FrameFunctions::hermite_s(0.8),
                                                 FrameFunctions::hermite_nm(0), FrameFunctions::hermite_nm(2)};
    return all;
}

std::vector<Quaternion> random_vector(testing::Sampler& rng, std::size_t M) {
    std::vector<Quaternion> v(M);
    for (auto& c : v) c = rng.quaternion();
    return v;
}

} // namespace

TEST_CASE("coherent states are unit vectors", "[coherent]") {
    testing::Sampler rng(51);
    for (const auto& fam : families()) {
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const CSVector v = cs_build(fam, rng.in_ball(1.5));
            const Quaternion o = overlap(v, v);
            CHECK(norm(o.imag()) < 1e-15);
            worst = std::max(worst, std::abs(o.x0 - 1.0));
            CHECK(v.tail <= 1e-10 * v.norm_factor);
        }
        INFO(fam.name());
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("NM normalization equals exp(|q|^2) on every level", "[coherent]") {
    testing::Sampler rng(52);
    for (unsigned n = 0; n <= 3; ++n) {
        for (int t = 0; t < 10; ++t) {
            const Quaternion q = rng.in_ball(1.5);
            CHECK(FrameFunctions::hermite_nm(n).norm_factor(q) == Catch::Approx(std::exp(norm2(q))).epsilon(1e-12));
        }
    }
}

TEST_CASE("overlaps reproduce the kernels", "[coherent]") {
    testing::Sampler rng(53);
    for (int t = 0; t < 20; ++t) {
        const Quaternion q1 = rng.in_ball(1.5);
        const Quaternion q2 = rng.in_ball(1.5);
        const auto scaled = [&](const FrameFunctions& fam) {
            const CSVector a = cs_build(fam, q1);
            const CSVector b = cs_build(fam, q2);
            return std::sqrt(a.norm_factor * b.norm_factor) * overlap(a, b);
        };
        const Quaternion k0 = bargmann_kernel(q1, q2).value;
        CHECK(norm(scaled(FrameFunctions::canonical()) - k0) <= 1e-10 * norm(k0));
        const Quaternion ks = K_s_series(q1, q2, 0.5).value;
        CHECK(norm(scaled(FrameFunctions::hermite_s(0.5)) - ks) <= 1e-10 * norm(ks));
        const Quaternion k2 = K_n_series(q1, q2, 2).value;
        CHECK(norm(scaled(FrameFunctions::hermite_nm(2)) - k2) <= 1e-10 * std::exp(norm2(q1) + norm2(q2)));
    }
}

TEST_CASE("cs_build and overlap errors", "[coherent]") {
    CHECK_THROWS_AS(cs_build(FrameFunctions::canonical(), Quaternion{3.0, 1.0, 0.0, 0.0}, 10), TruncationInsufficient);
    CHECK_NOTHROW(cs_build(FrameFunctions::canonical(), Quaternion{3.0, 1.0, 0.0, 0.0}, 80));
    const CSVector a = cs_build(FrameFunctions::canonical(), Quaternion{0.2});
    const CSVector b = cs_build(FrameFunctions::hermite_s(0.5), Quaternion{0.2});
    const CSVector c = cs_build(FrameFunctions::canonical(), Quaternion{0.2}, 30);
    const CSVector d = cs_build(FrameFunctions::canonical(true), Quaternion{0.2});
    CHECK_THROWS_AS(overlap(a, b), BasisMismatch);
    CHECK_THROWS_AS(overlap(a, c), BasisMismatch);
    CHECK_THROWS_AS(overlap(a, d), BasisMismatch);
    CHECK_THROWS_AS(FrameFunctions::hermite_s(1.0), DomainError);

    // small s decays slowly: the default truncation is not enough at |q| = 1.5
    const Quaternion far{0.9, 0.0, 1.2, 0.0};
    CHECK_THROWS_AS(cs_build(FrameFunctions::hermite_s(0.2), far), TruncationInsufficient);
    const CSVector wide = cs_build(FrameFunctions::hermite_s(0.2), far, 160);
    CHECK(overlap(wide, wide).x0 == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("resolution of the identity", "[coherent]") {
    const ResolutionReport canon = resolution_of_identity(FrameFunctions::canonical(), gauss_spec(), 6);
    CHECK(canon.gram.size() == 36);
    CHECK(canon.max_deviation <= 1e-8);

    const auto hs = FrameFunctions::hermite_s(0.5);
    CHECK(resolution_of_identity(hs, hs.default_spec(), 5).max_deviation <= 1e-7);

    CHECK(resolution_of_identity(FrameFunctions::hermite_nm(1), gauss_spec(), 5).max_deviation <= 1e-8);

    // the family is not orthonormal for a mismatched measure
    CHECK(resolution_of_identity(hs, gauss_spec(), 3).max_deviation > 1e-2);
}

TEST_CASE("W is an isometry on finite vectors", "[coherent]") {
    testing::Sampler rng(54);
    const QuadratureSpec spec = gauss_spec(40, 4, 4);
    for (const auto& fam : {FrameFunctions::canonical(), FrameFunctions::hermite_nm(1)}) {
        const auto f = random_vector(rng, 5);
        double f2 = 0.0;
        for (const auto& c : f) f2 += norm2(c);
        const double w2 = integrate_H([&](const Quaternion& q) { return Quaternion{norm2(isometry_W(f, fam, q))}; },
                                      spec)
                              .x0;
        CHECK(w2 == Catch::Approx(f2).epsilon(1e-8));
    }
    CHECK(isometry_W({}, FrameFunctions::canonical(), Quaternion{0.4}) == Quaternion{});
}

TEST_CASE("W images are anti-regular", "[coherent]") {
    testing::Sampler rng(55);
    std::vector<Quaternion> pts;
    for (int t = 0; t < 30; ++t) pts.push_back(rng.in_ball(1.5));
    pts.push_back(Quaternion{0.7});

    const auto f = random_vector(rng, 8);
    const RegularityReport canon = antiregularity_report(FrameFunctions::canonical(), f, pts);
    CHECK(canon.mode == RegularityMode::AntiRegular);
    CHECK(canon.samples == pts.size());
    CHECK(canon.max_residual <= 1e-6);

    const RegularityReport conj_family = antiregularity_report(FrameFunctions::canonical(true), f, pts);
    CHECK(conj_family.mode == RegularityMode::Regular);
    CHECK(conj_family.max_residual <= 1e-6);

    CHECK(antiregularity_report(FrameFunctions::hermite_s(0.5), f, pts).max_residual <= 1e-6);

    CHECK(antiregularity_report(FrameFunctions::canonical(), {Quaternion{0.3, 1, -2, 0.5}}, pts).max_residual == 0.0);

    // the other operator does not annihilate the same images
    const auto Wf = [&](const Quaternion& q) { return isometry_W(f, FrameFunctions::canonical(), q); };
    double regular = 0.0;
    for (const auto& q : pts) {
        regular = std::max(regular, norm(regularity_residual(Wf, q, RegularityMode::Regular, 1e-4).value));
    }
    CHECK(regular > 1e-2);
}

TEST_CASE("ladder operators", "[coherent]") {
    testing::Sampler rng(56);
    const std::size_t M = 10;
    auto v = random_vector(rng, M);
    v.back() = Quaternion{};

    const LadderResult lowered = ladder(LadderOp::Lower, v);
    CHECK_FALSE(lowered.truncation_loss);
    const LadderResult raised = ladder(LadderOp::Raise, v);
    CHECK_FALSE(raised.truncation_loss);
    CHECK(raised.v[0] == Quaternion{});

    const QSeries base = realize_h0(v);
    const QSeries derivative = cullen_derivative(base);
    for (int t = 0; t < 20; ++t) {
        const Quaternion q = rng.in_ball(1.5);
        const double scale = 1.0 + norm(eval(base, q));
        CHECK(norm(eval(realize_h0(lowered.v), q) - eval(derivative, q)) <= 1e-12 * scale * 10);
        CHECK(norm(eval(realize_h0(raised.v), q) - eval(base, q) * q) <= 1e-12 * scale * 10);
    }

    // [a, a+] = 1 below the top index
    auto w = random_vector(rng, M);
    w[M - 1] = w[M - 2] = Quaternion{};
    const auto ab = ladder(LadderOp::Lower, ladder(LadderOp::Raise, w).v).v;
    const auto ba = ladder(LadderOp::Raise, ladder(LadderOp::Lower, w).v).v;
    for (std::size_t m = 0; m < M; ++m) CHECK(norm(ab[m] - ba[m] - w[m]) <= 1e-12 * (1.0 + norm(w[m])) * M);

    std::vector<Quaternion> top(4);
    top[3] = units::k;
    const LadderResult lost = ladder(LadderOp::Raise, top);
    CHECK(lost.truncation_loss);
    CHECK(std::all_of(lost.v.begin(), lost.v.end(), [](const Quaternion& c) { return c == Quaternion{}; }));
}

TEST_CASE("regular and anti-regular spaces meet in the constants", "[coherent]") {
    const IntersectionReport r = reg_antireg_intersection_check(5);
    CHECK(r.gram.size() == 36);
    CHECK(r.origin_entry.x0 == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(norm(r.origin_entry.imag()) < 1e-14);
    CHECK(r.max_off_origin <= 1e-10);
    CHECK_THROWS_AS(reg_antireg_intersection_check(0), DomainError);
}
