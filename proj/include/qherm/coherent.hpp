#pragma once

/**
 * @file coherent.hpp
 * @brief Coherent states eta_q = N(q)^{-1/2} sum_m Phi_m(q) phi_m over an abstract basis phi_m,
 * represented by coefficient vectors with scalars acting from the left.
 */

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/hermite.hpp"
#include "qherm/kernels.hpp"
#include "qherm/quadrature.hpp"
#include "qherm/quaternion.hpp"
#include "qherm/series.hpp"

namespace qherm {

enum class FamilyKind { Canonical, HermiteS, HermiteNM };

/// Generator of the frame functions Phi_m.
struct FrameFunctions {
    FamilyKind kind = FamilyKind::Canonical;
    double s = 0.5;          ///< HermiteS
    unsigned n = 0;          ///< HermiteNM
    bool conjugate = false;  ///< Canonical only: Phi_m = conj(q)^m / sqrt(m!)

    [[nodiscard]] static FrameFunctions canonical(bool conjugate = false) {
        return {FamilyKind::Canonical, 0.5, 0, conjugate};
    }
    [[nodiscard]] static FrameFunctions hermite_s(double s) {
        check_s(s);
        return {FamilyKind::HermiteS, s, 0, false};
    }
    [[nodiscard]] static FrameFunctions hermite_nm(unsigned n) { return {FamilyKind::HermiteNM, 0.5, n, false}; }

    [[nodiscard]] std::string name() const {
        switch (kind) {
        case FamilyKind::Canonical: return conjugate ? "canonical-conjugate" : "canonical";
        case FamilyKind::HermiteS: return "hermite-s";
        case FamilyKind::HermiteNM: return "hermite-nm";
        }
        return "?";
    }

    friend bool operator==(const FrameFunctions&, const FrameFunctions&) = default;

    /// Phi_0(q) .. Phi_{M-1}(q)
    [[nodiscard]] std::vector<Quaternion> values(const Quaternion& q, std::size_t M) const {
        if (M == 0) return {};
        const auto top = static_cast<unsigned>(M - 1);
        switch (kind) {
        case FamilyKind::Canonical: {
            std::vector<Quaternion> v(M);
            const Quaternion x = conjugate ? conj(q) : q;
            v[0] = Quaternion{1.0};
            for (std::size_t m = 1; m < M; ++m) v[m] = (1.0 / std::sqrt(static_cast<double>(m))) * (v[m - 1] * x);
            return v;
        }
        case FamilyKind::HermiteS: return hermite_normalized_table(top, q, s);
        case FamilyKind::HermiteNM: return h_nm_normalized_row(n, top, q);
        }
        return {};
    }

    /// N(q) = sum_m |Phi_m(q)|^2: closed form for Canonical and HermiteS, adaptive K_n diagonal otherwise.
    [[nodiscard]] double norm_factor(const Quaternion& q) const {
        switch (kind) {
        case FamilyKind::Canonical: return std::exp(norm2(q));
        case FamilyKind::HermiteS: return K_s_diag(q, s);
        case FamilyKind::HermiteNM: {
            Truncation t;
            t.max_terms = std::max<std::size_t>(200, static_cast<std::size_t>(4.0 * norm2(q) + 60.0));
            return K_n_series(q, q, n, std::nullopt, t).value.x0;
        }
        }
        return 0.0;
    }

    /// The measure under which the family is orthonormal.
    [[nodiscard]] QuadratureSpec default_spec() const {
        return kind == FamilyKind::HermiteS ? eta_spec(s) : gauss_spec();
    }
};

inline constexpr std::size_t default_cs_terms = 40;
inline constexpr double default_cs_tail_tol = 1e-10;

struct CSVector {
    FrameFunctions family;
    Quaternion q;
    std::vector<Quaternion> coeffs;  ///< coefficient of phi_m, m = 0..M-1
    double norm_factor = 0.0;
    std::size_t truncation = 0;      ///< M
    double tail = 0.0;               ///< N(q) - sum_{m<M} |Phi_m(q)|^2
};

[[nodiscard]] inline CSVector cs_build(const FrameFunctions& family, const Quaternion& q,
                                       std::size_t M = default_cs_terms, double tail_tol = default_cs_tail_tol) {
    CSVector v{family, q, family.values(q, M), family.norm_factor(q), M, 0.0};
    if (!(v.norm_factor > 0.0) || !std::isfinite(v.norm_factor)) {
        throw DomainError("cs_build: normalization factor is not finite and positive");
    }
    double partial = 0.0;
    for (const Quaternion& c : v.coeffs) partial += norm2(c);
    v.tail = std::abs(v.norm_factor - partial);
    if (v.tail > tail_tol * v.norm_factor) {
        throw TruncationInsufficient("cs_build: " + std::to_string(M) + " terms leave a tail of " +
                                     std::to_string(v.tail / v.norm_factor) + " relative");
    }
    const double scale = 1.0 / std::sqrt(v.norm_factor);
    for (Quaternion& c : v.coeffs) c = scale * c;
    return v;
}

/// sum_m a_m conj(b_m), ascending m.
[[nodiscard]] inline Quaternion overlap(const CSVector& a, const CSVector& b) {
    if (!(a.family == b.family) || a.coeffs.size() != b.coeffs.size()) {
        throw BasisMismatch("overlap: vectors use different families or truncations");
    }
    Quaternion sum{};
    for (std::size_t m = 0; m < a.coeffs.size(); ++m) sum += mul_conj(a.coeffs[m], b.coeffs[m]);
    return sum;
}

struct ResolutionReport {
    std::size_t M = 0;
    std::vector<Quaternion> gram;  ///< row-major M x M
    double max_deviation = 0.0;    ///< max |G - identity|
};

/// G_ij = int <phi_i|eta_x><eta_x|phi_j> N(x) dmu(x), with <phi_i|eta_x> = conj(eta_x,i).
[[nodiscard]] inline ResolutionReport resolution_of_identity(const FrameFunctions& family, const QuadratureSpec& spec,
                                                             std::size_t M) {
    struct Acc {
        std::vector<Quaternion> g;
    };
    const Acc zero{std::vector<Quaternion>(M * M)};
    Acc total = ordered_reduce(
        spec.size(), zero,
        [&](std::size_t k, Acc& acc) {
            const Quaternion x = spec.node(k);
            const double N = family.norm_factor(x);
            const double scale = 1.0 / std::sqrt(N);
            std::vector<Quaternion> eta = family.values(x, M);
            for (Quaternion& c : eta) c = scale * c;
            const double w = spec.weight(k) * N;
            for (std::size_t i = 0; i < M; ++i) {
                const Quaternion left = w * conj(eta[i]);
                for (std::size_t j = 0; j < M; ++j) acc.g[i * M + j] += left * eta[j];
            }
        },
        [M](Acc& t, const Acc& p) {
            for (std::size_t i = 0; i < M * M; ++i) t.g[i] += p.g[i];
        });
    ResolutionReport r{M, std::move(total.g), 0.0};
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            r.max_deviation = std::max(r.max_deviation, norm(r.gram[i * M + j] - (i == j ? 1.0 : 0.0)));
        }
    }
    return r;
}

/// (W f)(q) = N(q)^{1/2} <f|eta_q> = sum_m f_m conj(Phi_m(q)).
[[nodiscard]] inline Quaternion isometry_W(const std::vector<Quaternion>& f, const FrameFunctions& family,
                                           const Quaternion& q) {
    if (f.empty()) return {};
    const auto phi = family.values(q, f.size());
    Quaternion sum{};
    for (std::size_t m = 0; m < f.size(); ++m) sum += mul_conj(f[m], phi[m]);
    return sum;
}

struct RegularityReport {
    RegularityMode mode = RegularityMode::AntiRegular;
    double max_residual = 0.0;
    double step = 0.0;
    std::size_t samples = 0;
};

/**
 * Slice residual of W f at each sample point. W-images are sums f_m conj(Phi_m(q)) with f_m on
 * the left, so the slice unit acts from the right. The Canonical family is checked in
 * AntiRegular mode and its conjugate variant in Regular mode.
 */
[[nodiscard]] inline RegularityReport antiregularity_report(const FrameFunctions& family,
                                                            const std::vector<Quaternion>& f,
                                                            const std::vector<Quaternion>& sample_qs, double h = 1e-4) {
    RegularityReport r;
    r.mode = family.conjugate ? RegularityMode::Regular : RegularityMode::AntiRegular;
    r.step = h;
    r.samples = sample_qs.size();
    const auto Wf = [&](const Quaternion& q) { return isometry_W(f, family, q); };
    for (const Quaternion& q : sample_qs) {
        const SliceResidual res = regularity_residual(Wf, q, r.mode, h, Handedness::Right);
        r.max_residual = std::max(r.max_residual, norm(res.value));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Ladder operators on the h_{0,m} = q^m / sqrt(m!) basis
// ---------------------------------------------------------------------------

enum class LadderOp { Lower, Raise };

struct LadderResult {
    std::vector<Quaternion> v;
    bool truncation_loss = false;  ///< Raise pushed nonzero weight past the last index
};

[[nodiscard]] inline LadderResult ladder(LadderOp op, const std::vector<Quaternion>& v) {
    LadderResult r{std::vector<Quaternion>(v.size()), false};
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (op == LadderOp::Lower) {
            if (m > 0) r.v[m - 1] = std::sqrt(static_cast<double>(m)) * v[m];
        } else if (m + 1 < v.size()) {
            r.v[m + 1] = std::sqrt(m + 1.0) * v[m];
        } else if (v[m] != Quaternion{}) {
            r.truncation_loss = true;
        }
    }
    return r;
}

/// sum_m v_m q^m / sqrt(m!) as a left-coefficient series.
[[nodiscard]] inline QSeries realize_h0(const std::vector<Quaternion>& v) {
    QSeries s{CoeffSide::Left, {}};
    double inv_sqrt_fact = 1.0;
    for (std::size_t m = 0; m < v.size(); ++m) {
        if (m > 0) inv_sqrt_fact /= std::sqrt(static_cast<double>(m));
        s.coeffs.push_back(v[m] * inv_sqrt_fact);
    }
    return s;
}

struct IntersectionReport {
    std::size_t M = 0;
    std::vector<Quaternion> gram;  ///< (M+1) x (M+1): int h_{0,m} conj(h_{n,0})
    Quaternion origin_entry;
    double max_off_origin = 0.0;
};

/// Gram matrix between {h_{0,m}}_{m<=M} and {h_{n,0}}_{n<=M}; only the (0,0) entry survives.
[[nodiscard]] inline IntersectionReport reg_antireg_intersection_check(std::size_t M,
                                                                       const QuadratureSpec& spec = gauss_spec()) {
    if (M < 1) throw DomainError("reg_antireg_intersection_check: M must be >= 1");
    const std::size_t k = M + 1;
    struct Acc {
        std::vector<Quaternion> g;
    };
    const Acc zero{std::vector<Quaternion>(k * k)};
    Acc total = ordered_reduce(
        spec.size(), zero,
        [&](std::size_t node, Acc& acc) {
            const Quaternion q = spec.node(node);
            const double w = spec.weight(node);
            std::vector<Quaternion> reg(k), anti(k);
            reg[0] = anti[0] = Quaternion{1.0};
            for (std::size_t m = 1; m < k; ++m) {
                reg[m] = reg[m - 1] * q;             // h_{0,m} = q^m
                anti[m] = anti[m - 1] * conj(q);     // h_{m,0} = conj(q)^m
            }
            for (std::size_t m = 0; m < k; ++m) {
                for (std::size_t n = 0; n < k; ++n) acc.g[m * k + n] += w * mul_conj(reg[m], anti[n]);
            }
        },
        [k](Acc& t, const Acc& p) {
            for (std::size_t i = 0; i < k * k; ++i) t.g[i] += p.g[i];
        });
    IntersectionReport r{M, std::move(total.g), {}, 0.0};
    r.origin_entry = r.gram[0];
    for (std::size_t i = 1; i < k * k; ++i) r.max_off_origin = std::max(r.max_off_origin, norm(r.gram[i]));
    return r;
}

} // namespace qherm
