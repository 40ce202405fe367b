#pragma once

/**
 * @file verify.hpp
 * @brief Named verification suites. Each suite returns a list of pinned checks plus
 * machine-readable details; results depend only on the config and seed.
 */

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qherm/coherent.hpp"
#include "qherm/hermite.hpp"
#include "qherm/io.hpp"
#include "qherm/kernels.hpp"
#include "qherm/landau.hpp"
#include "qherm/quadrature.hpp"
#include "qherm/series.hpp"

namespace qherm {

struct VerifyConfig {
    double s = 0.5;
    std::uint64_t seed = 1;
    std::optional<unsigned> max_n;  ///< overrides each suite's index range
    std::size_t planar_order = default_planar_order;
    std::size_t gauss_order = 40;
    std::size_t su2_order = 8;
    std::map<std::string, double> tolerances;  ///< overrides by check name

    [[nodiscard]] double tol(const std::string& check, double fallback) const {
        const auto it = tolerances.find(check);
        return it == tolerances.end() ? fallback : it->second;
    }
    [[nodiscard]] unsigned n_or(unsigned fallback) const { return max_n.value_or(fallback); }
};

struct Check {
    std::string name;
    unsigned criterion = 0;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    Json details = Json::object();

    [[nodiscard]] bool passed() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    /// value <= tolerance; NaN fails.
    void add(const VerifyConfig& cfg, const std::string& name, unsigned criterion, double value, double tolerance) {
        const double t = cfg.tol(name, tolerance);
        checks.push_back({name, criterion, value, t, value <= t});
    }
};

inline void to_json(Json& j, const Check& c) {
    j = Json{{"name", c.name}, {"criterion", c.criterion}, {"value", c.value}, {"tolerance", c.tolerance},
             {"pass", c.pass}};
}

inline void to_json(Json& j, const SuiteResult& r) {
    j = Json{{"suite", r.suite}, {"pass", r.passed()}, {"checks", r.checks}, {"details", r.details}};
}

namespace detail {

class SuiteRng {
public:
    SuiteRng(std::uint64_t seed, std::uint64_t stream) : rng_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    Quaternion quaternion() { return {gauss(), gauss(), gauss(), gauss()}; }

    Quaternion in_ball(double r_max) {
        Quaternion q = quaternion();
        while (norm(q) == 0.0) q = quaternion();
        return q * (uniform(0.0, r_max) / norm(q));
    }
    Complex in_disc(double r_max) {
        return std::polar(r_max * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
    }
    UnitImaginary unit() {
        for (;;) {
            const double a = gauss(), b = gauss(), c = gauss();
            if (a * a + b * b + c * c > 1e-6) return UnitImaginary::normalized(a, b, c);
        }
    }

private:
    std::mt19937_64 rng_;
};

inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double x = std::log(xs[k]);
        const double y = std::log(ys[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double factorial_d(unsigned n) {
    double f = 1.0;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

[[nodiscard]] inline SuiteResult suite_orthogonality(const VerifyConfig& cfg) {
    SuiteResult r{"orthogonality", {}, Json::object()};
    const double s = cfg.s;

    // complex Gram under nu_s
    {
        const unsigned N = cfg.n_or(8);
        const std::size_t k = N + 1;
        const PlanarRule rule = nu_rule(s, cfg.planar_order);
        const auto G = gram_C([N](Complex z, std::vector<Complex>& out) { out = hermite_table(N, z); }, k, rule);
        double off = 0.0, err_b = 0.0, err_bf = 0.0;
        Json diag = Json::array();
        for (std::size_t n = 0; n < k; ++n) {
            const double bn = b_n(s, static_cast<unsigned>(n)).value;
            for (std::size_t m = 0; m < k; ++m) {
                if (m != n) off = std::max(off, std::abs(G[n * k + m]) / std::sqrt(bn * b_n(s, static_cast<unsigned>(m)).value));
            }
            const double g = G[n * k + n].real();
            err_b = std::max(err_b, std::abs(g - bn) / bn);
            const double bnf = bn * detail::factorial_d(static_cast<unsigned>(n));
            err_bf = std::max(err_bf, std::abs(g - bnf) / bnf);
            diag.push_back(Json{{"n", n}, {"gram", g}, {"b_n", bn}});
        }
        const bool plain = err_b <= err_bf;
        r.details["complex"] = Json{{"max_n", N}, {"order", cfg.planar_order}, {"convention", plain ? "b_n" : "b_n*n!"},
                                    {"rel_error_b_n", err_b}, {"rel_error_b_n_factorial", err_bf}, {"diagonal", diag}};
        r.add(cfg, "complex_offdiag_scaled", 1, off, 1e-10);
        r.add(cfg, "complex_diag_rel", 1, std::min(err_b, err_bf), 1e-8);
    }

    // quaternionic Gram of H_n^s under eta_s
    {
        const unsigned N = cfg.n_or(5);
        const std::size_t k = N + 1;
        const QuadratureSpec spec = eta_spec(s, cfg.planar_order, cfg.su2_order, cfg.su2_order);
        const auto G = gram_H(
            [N, s](const Quaternion& q, std::vector<Quaternion>& out) { out = hermite_normalized_table(N, q, s); }, k,
            spec);
        double dev = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) dev = std::max(dev, norm(G[i * k + j] - (i == j ? 1.0 : 0.0)));
        r.details["quaternionic"] = Json{{"max_n", N}, {"nodes", spec.size()}, {"max_deviation", dev}};
        r.add(cfg, "quaternionic_identity", 2, dev, 1e-7);
    }

    // h_{n,m} under the Gaussian measure
    {
        const unsigned N = cfg.n_or(6);
        const std::size_t side = N + 1;
        const std::size_t k = side * side;
        const QuadratureSpec spec = gauss_spec(cfg.gauss_order, cfg.su2_order, cfg.su2_order);
        std::vector<double> scale(k);
        for (std::size_t n = 0; n < side; ++n)
            for (std::size_t m = 0; m < side; ++m)
                scale[n * side + m] = std::sqrt(detail::factorial_d(static_cast<unsigned>(n)) *
                                                detail::factorial_d(static_cast<unsigned>(m)));
        const auto G = gram_H(
            [&](const Quaternion& q, std::vector<Quaternion>& out) {
                for (unsigned n = 0; n < side; ++n) {
                    const auto row = h_nm_normalized_row(n, N, q);
                    for (std::size_t m = 0; m < side; ++m) out[n * side + m] = scale[n * side + m] * row[m];
                }
            },
            k, spec);
        double diag = 0.0, cross = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                const double sab = scale[a] * scale[b];
                if (a == b) {
                    diag = std::max(diag, norm(G[a * k + b] - sab) / sab);
                } else {
                    cross = std::max(cross, norm(G[a * k + b]) / sab);
                }
            }
        }
        r.details["two_index"] = Json{{"max_n", N}, {"nodes", spec.size()}, {"diag_rel", diag}, {"cross_scaled", cross}};
        r.add(cfg, "two_index_norm_rel", 3, diag, 1e-8);
        r.add(cfg, "two_index_cross", 3, cross, 1e-8);
    }
    return r;
}

[[nodiscard]] inline SuiteResult suite_recursion(const VerifyConfig& cfg) {
    SuiteResult r{"recursion", {}, Json::object()};
    const unsigned N = cfg.n_or(12);
    detail::SuiteRng rng(cfg.seed, 11);
    double worst_rec = 0.0, worst_rec2 = 0.0;
    std::vector<QSeries> derivs;
    for (unsigned n = 0; n <= N; ++n) derivs.push_back(cullen_derivative(to_qseries(hermite_real(n))));
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = rng.in_ball(1.5);
        const double a = norm(q);
        for (unsigned n = 1; n <= N; ++n) {
            // q H_n = H_{n+1}/2 + n H_{n-1}
            const Quaternion res = q * hermite_q_explicit(n, q) - 0.5 * hermite_q_explicit(n + 1, q) -
                                   static_cast<double>(n) * hermite_q_explicit(n - 1, q);
            const double sc = a * hermite_majorant(n, a) + 0.5 * hermite_majorant(n + 1, a) +
                              n * hermite_majorant(n - 1, a);
            worst_rec = std::max(worst_rec, norm(res) / sc);
            // H_{n+1} = 2q H_n - H_n'
            const Quaternion res2 = hermite_q_explicit(n + 1, q) - 2.0 * q * hermite_q_explicit(n, q) + eval(derivs[n], q);
            const double sc2 = hermite_majorant(n + 1, a) + 2.0 * a * hermite_majorant(n, a);
            worst_rec2 = std::max(worst_rec2, norm(res2) / sc2);
        }
    }
    r.add(cfg, "three_term_residual", 11, worst_rec, 1e-12);
    r.add(cfg, "derivative_recursion_residual", 11, worst_rec2, 1e-12);

    const unsigned gen_order = std::min(cfg.n_or(6), 6u);
    const bool gen_ok = gen_func_check(gen_order);
    r.add(cfg, "generating_function_mismatch", 11, gen_ok ? 0.0 : 1.0, 0.0);

    const unsigned kummer_order = std::min(cfg.n_or(8), 8u);
    unsigned kummer_bad = 0, kummer_cases = 0;
    for (unsigned n = 0; 2 * n <= kummer_order; ++n) {
        for (unsigned m = n; n + m <= kummer_order; ++m) {
            ++kummer_cases;
            if (!(kummer_poly(n, m) == to_rational(H_nm_poly(n, m)))) ++kummer_bad;
        }
    }
    r.add(cfg, "kummer_mismatch", 11, kummer_bad, 0.0);
    r.details = Json{{"max_n", N},
                     {"samples", 100},
                     {"scale", "residual over the sum of term majorants"},
                     {"generating_function_order", gen_order},
                     {"kummer_order", kummer_order},
                     {"kummer_cases", kummer_cases}};
    return r;
}

[[nodiscard]] inline SuiteResult suite_kernels(const VerifyConfig& cfg) {
    SuiteResult r{"kernels", {}, Json::object()};
    const double s = cfg.s;
    detail::SuiteRng rng(cfg.seed, 5);
    double worst_k = 0.0, worst_f = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Complex z = rng.in_disc(1.5);
        const Complex w = rng.in_disc(1.5);
        const Complex kc = K_s_closed_complex(z, w, s);
        const Complex fc = frak_K_closed(z, w, s);
        worst_k = std::max(worst_k, std::abs(K_s_series_complex(z, w, s).value - kc) / std::abs(kc));
        worst_f = std::max(worst_f, std::abs(frak_K_series(z, w, s).value - fc) / std::abs(fc));
    }
    r.add(cfg, "K_s_closed_rel", 5, worst_k, 1e-9);
    r.add(cfg, "frak_K_closed_rel", 5, worst_f, 1e-9);

    double worst_off = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = rng.in_ball(1.5);
        const Mat2 m = to_matrix(K_s_series(q, q, s).value);
        worst_off = std::max({worst_off, std::abs(m(0, 1)), std::abs(m(1, 0)), std::abs(m(0, 0) - m(1, 1))});
    }
    r.add(cfg, "K_s_diagonal_offdiag", 5, worst_off, 1e-10);

    double worst_0 = 0.0, worst_b = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Quaternion q = rng.in_ball(1.5);
        const double e = std::exp(norm2(q));
        worst_0 = std::max(worst_0, norm(K_n_series(q, q, 0).value - Quaternion{e}) / e);
        worst_b = std::max(worst_b, norm(bargmann_kernel(q, q).value - Quaternion{e}) / e);
    }
    r.add(cfg, "K_0_diag_rel", 6, worst_0, 1e-9);
    r.add(cfg, "bargmann_diag_rel", 6, worst_b, 1e-9);
    r.details = Json{{"s", s}, {"pairs", 50}, {"points", 100}, {"radius", 1.5}};
    return r;
}

[[nodiscard]] inline SuiteResult suite_landau(const VerifyConfig& cfg) {
    SuiteResult r{"landau", {}, Json::object()};
    const unsigned N = cfg.n_or(10);
    Json rows = Json::array();
    unsigned bad = 0;
    for (unsigned n = 0; n <= N; ++n) {
        for (unsigned m = 0; m <= N; ++m) {
            const auto ev = landau_eigenvalue(landau_state(n, m));
            const Rational expected = Rational(2 * landau_level(n, m) + 1, 2);
            if (!ev || *ev != expected) ++bad;
            rows.push_back(Json{{"n", n}, {"m", m}, {"eigenvalue", ev ? ev->str() : "none"}});
        }
    }
    r.add(cfg, "eigenvalue_mismatch", 4, bad, 0.0);
    r.details = Json{{"max_n", N}, {"level_index", "first"}, {"eigenvalues", rows}};
    return r;
}

[[nodiscard]] inline SuiteResult suite_resolution(const VerifyConfig& cfg) {
    SuiteResult r{"resolution", {}, Json::object()};
    const auto canon = FrameFunctions::canonical();
    const auto hs = FrameFunctions::hermite_s(cfg.s);
    detail::SuiteRng rng(cfg.seed, 7);
    // 5 radii x 10 directions
    std::vector<Quaternion> grid;
    for (int ring = 1; ring <= 5; ++ring) {
        for (int d = 0; d < 10; ++d) {
            Quaternion u = rng.quaternion();
            grid.push_back(u * (0.3 * ring / norm(u)));
        }
    }
    double worst = 0.0;
    for (const auto& fam : {canon, hs}) {
        for (const Quaternion& q : grid) {
            const CSVector v = cs_build(fam, q);
            worst = std::max(worst, norm(overlap(v, v) - 1.0));
        }
    }
    r.add(cfg, "cs_normalization", 7, worst, 1e-8);

    const std::size_t Mc = cfg.n_or(6), Ms = cfg.n_or(5);
    const ResolutionReport rc =
        resolution_of_identity(canon, gauss_spec(cfg.gauss_order, cfg.su2_order, cfg.su2_order), Mc);
    const ResolutionReport rs =
        resolution_of_identity(hs, eta_spec(cfg.s, cfg.planar_order, cfg.su2_order, cfg.su2_order), Ms);
    r.add(cfg, "canonical_resolution", 7, rc.max_deviation, 1e-6);
    r.add(cfg, "hermite_s_resolution", 7, rs.max_deviation, 1e-6);
    r.details = Json{{"grid_points", grid.size()}, {"canonical_M", Mc}, {"hermite_s_M", Ms}, {"s", cfg.s}};
    return r;
}

[[nodiscard]] inline SuiteResult suite_regularity(const VerifyConfig& cfg) {
    SuiteResult r{"regularity", {}, Json::object()};
    detail::SuiteRng rng(cfg.seed, 8);

    double worst_fd = 0.0;
    for (const CoeffSide side : {CoeffSide::Left, CoeffSide::Right}) {
        for (int trial = 0; trial < 20; ++trial) {
            QSeries s{side, {}};
            for (int n = 0; n <= 1 + trial % 8; ++n) s.coeffs.push_back(rng.quaternion());
            const QSeries ds = cullen_derivative(s);
            const auto f = [&](const Quaternion& q) { return eval(s, q); };
            for (int p = 0; p < 10; ++p) {
                const Quaternion q = rng.in_ball(1.5);
                const Quaternion exact = eval(ds, q);
                const Quaternion numeric = cullen_derivative_numeric(f, q, 1e-5, handedness_of(side));
                worst_fd = std::max(worst_fd, norm(numeric - exact) / std::max(1.0, norm(exact)));
            }
        }
    }
    r.add(cfg, "cullen_fd_rel", 8, worst_fd, 1e-6);

    const std::vector<double> hs{1e-2, 3e-3, 1e-3, 3e-4};
    double slope_dev = 0.0;
    Json slopes = Json::array();
    for (int trial = 0; trial < 10; ++trial) {
        const Quaternion a = rng.quaternion();
        const unsigned n = 3 + static_cast<unsigned>(trial % 4);
        const Quaternion q = rng.in_ball(1.5) + Quaternion{0.0, 0.3, 0.0, 0.0};
        const auto f = [&](const Quaternion& x) { return a * qpow(x, n); };
        std::vector<double> res;
        for (double h : hs) res.push_back(norm(regularity_residual(f, q, RegularityMode::Regular, h).value));
        const double slope = detail::loglog_slope(hs, res);
        slopes.push_back(slope);
        slope_dev = std::max(slope_dev, std::abs(slope - 2.0));
    }
    r.add(cfg, "residual_slope_deviation", 8, slope_dev, 0.2);

    const std::size_t M = 8;
    std::vector<Quaternion> pts;
    for (int t = 0; t < 50; ++t) pts.push_back(rng.in_ball(1.5));
    double worst_anti = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        std::vector<Quaternion> e(M);
        e[m] = Quaternion{1.0};
        worst_anti = std::max(worst_anti, antiregularity_report(FrameFunctions::canonical(), e, pts, 1e-4).max_residual);
    }
    r.add(cfg, "antiregular_residual", 9, worst_anti, 1e-7);

    const IntersectionReport ir = reg_antireg_intersection_check(6, gauss_spec(cfg.gauss_order, 4, 4));
    r.add(cfg, "intersection_origin", 9, norm(ir.origin_entry - 1.0), 1e-7);
    r.add(cfg, "intersection_off_origin", 9, ir.max_off_origin, 1e-7);
    r.details = Json{{"fd_step", 1e-5}, {"slope_steps", hs}, {"slopes", slopes}, {"antiregular_step", 1e-4},
                     {"antiregular_basis", M}, {"intersection_M", 6}};
    return r;
}

[[nodiscard]] inline SuiteResult suite_splitting(const VerifyConfig& cfg) {
    SuiteResult r{"splitting", {}, Json::object()};
    detail::SuiteRng rng(cfg.seed, 10);
    double worst_rec = 0.0, worst_cr = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const UnitImaginary I = rng.unit();
        UnitImaginary J;
        for (;;) {
            const UnitImaginary v = rng.unit();
            const double d = I.dot(v);
            const double a = v.x1() - d * I.x1(), b = v.x2() - d * I.x2(), c = v.x3() - d * I.x3();
            if (a * a + b * b + c * c > 1e-2) {
                J = UnitImaginary::normalized(a, b, c);
                break;
            }
        }
        const CoeffSide side = trial % 2 ? CoeffSide::Right : CoeffSide::Left;
        QSeries s{side, {}};
        for (int n = 0; n <= 8; ++n) s.coeffs.push_back(rng.quaternion());
        const SliceSplit split = slice_split(s, I, J);
        const auto F = [&](Complex w) { return split.eval_F(w); };
        const auto G = [&](Complex w) { return split.eval_G(w); };
        for (int p = 0; p < 20; ++p) {
            const Complex z = rng.in_disc(1.5);
            const Quaternion direct = eval(s, on_slice(z, I));
            worst_rec = std::max(worst_rec, norm(direct - split.recombine(z)) / std::max(1.0, norm(direct)));
            worst_cr = std::max({worst_cr, std::abs(cauchy_riemann_residual(F, z)), std::abs(cauchy_riemann_residual(G, z))});
        }
    }
    r.add(cfg, "reconstruction_rel", 10, worst_rec, 1e-12);
    r.add(cfg, "cauchy_riemann", 10, worst_cr, 1e-6);
    r.details = Json{{"degree", 8}, {"series", 10}, {"points_per_series", 20}};
    return r;
}

[[nodiscard]] inline SuiteResult suite_su2(const VerifyConfig& cfg) {
    SuiteResult r{"su2", {}, Json::object()};
    detail::SuiteRng rng(cfg.seed, 12);
    double worst = 0.0, worst_unit = 0.0;
    for (int t = 0; t < 10000; ++t) {
        Quaternion q = rng.quaternion();
        if (t % 1000 == 0) q = Quaternion{q.x0};
        const SU2Factor f = su2_factor(q);
        worst = std::max(worst, max_abs_diff(f.reconstruct(), to_matrix(q)) / std::max(1.0, norm(q)));
        worst_unit = std::max(worst_unit, max_abs_diff(f.u * f.u.adjoint(), Mat2::identity()));
    }
    r.add(cfg, "factor_reconstruction", 12, worst, 1e-12);
    r.add(cfg, "factor_unitarity", 12, worst_unit, 1e-12);

    double haar = 0.0;
    for (const SU2Rule& rule : {haar_su2(cfg.su2_order, cfg.su2_order),
                                haar_su2_full(cfg.su2_order, cfg.su2_order, cfg.su2_order)}) {
        Mat2 acc{};
        for (std::size_t k = 0; k < rule.size(); ++k) acc += (rule.u[k] * rule.u[k].adjoint()) * Complex{rule.weights[k]};
        haar = std::max(haar, max_abs_diff(acc, Mat2::identity()));
    }
    r.add(cfg, "haar_u_udagger", 12, haar, 1e-12);
    r.details = Json{{"samples", 10000}, {"su2_order", cfg.su2_order}};
    return r;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct SuiteInfo {
    std::string name;
    std::vector<unsigned> criteria;
    std::function<SuiteResult(const VerifyConfig&)> run;
};

[[nodiscard]] inline const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> all{
        {"orthogonality", {1, 2, 3}, suite_orthogonality},
        {"recursion", {11}, suite_recursion},
        {"kernels", {5, 6}, suite_kernels},
        {"landau", {4}, suite_landau},
        {"resolution", {7}, suite_resolution},
        {"regularity", {8, 9}, suite_regularity},
        {"splitting", {10}, suite_splitting},
        {"su2", {12}, suite_su2},
    };
    return all;
}

[[nodiscard]] inline const SuiteInfo* find_suite(const std::string& name) {
    for (const auto& s : suites())
        if (s.name == name) return &s;
    return nullptr;
}

} // namespace qherm
