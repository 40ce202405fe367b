#pragma once

/**
 * @file hermite.hpp
 * @brief Hermite families: H_n (real, complex, quaternionic), the s-normalized H_n^s,
 * and the two-index families h_{n,m}, H_{n,m} with their quaternionic lifts.
 *
 * Symbolic tables are exact (cpp_int / cpp_rational). Floating evaluation uses
 * three-term recursions.
 */

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "qherm/errors.hpp"
#include "qherm/poly.hpp"
#include "qherm/quaternion.hpp"
#include "qherm/series.hpp"

namespace qherm {

namespace detail {

[[nodiscard]] inline double conjugate(double x) { return x; }
[[nodiscard]] inline Complex conjugate(Complex z) { return std::conj(z); }
[[nodiscard]] inline Quaternion conjugate(const Quaternion& q) { return conj(q); }

[[nodiscard]] inline bool finite(double x) { return std::isfinite(x); }
[[nodiscard]] inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
[[nodiscard]] inline bool finite(const Quaternion& q) {
    return std::isfinite(q.x0) && std::isfinite(q.x1) && std::isfinite(q.x2) && std::isfinite(q.x3);
}

/// Read-mostly memo table keyed by (n, m). Values are computed outside the lock.
template <class V>
class PolyCache {
public:
    template <class Make>
    V get(unsigned n, unsigned m, Make&& make) {
        if (!enabled_) return make();
        {
            std::shared_lock lock(mutex_);
            const auto it = table_.find({n, m});
            if (it != table_.end()) return it->second;
        }
        V value = make();
        std::unique_lock lock(mutex_);
        return table_.try_emplace({n, m}, std::move(value)).first->second;
    }

    void set_enabled(bool on) {
        std::unique_lock lock(mutex_);
        enabled_ = on;
        if (!on) table_.clear();
    }

private:
    std::shared_mutex mutex_;
    std::map<Exponents, V> table_;
    bool enabled_ = true;
};

inline PolyCache<ZZbarPoly>& h_nm_cache() {
    static PolyCache<ZZbarPoly> cache;
    return cache;
}

inline PolyCache<ZZbarPoly>& H_nm_cache() {
    static PolyCache<ZZbarPoly> cache;
    return cache;
}

} // namespace detail

/// Turns memoization of h_{n,m} and H_{n,m} on or off (off also clears it).
inline void set_poly_cache_enabled(bool on) {
    detail::h_nm_cache().set_enabled(on);
    detail::H_nm_cache().set_enabled(on);
}

// ---------------------------------------------------------------------------
// H_n
// ---------------------------------------------------------------------------

/// H_{n+1} = 2x H_n - H_n', from H_0 = 1.
[[nodiscard]] inline IntPoly1 hermite_real(unsigned n) {
    IntPoly1 h{{BigInt{1}}};
    for (unsigned k = 0; k < n; ++k) h = h.times_x() * BigInt{2} - h.derivative();
    return h;
}

/// n! sum_k (-1)^k (2x)^(n-2k) / (k! (n-2k)!)
[[nodiscard]] inline IntPoly1 hermite_explicit(unsigned n) {
    std::vector<BigInt> c(n + 1, BigInt{0});
    const BigInt nf = factorial(n);
    for (unsigned k = 0; 2 * k <= n; ++k) {
        BigInt term = nf / (factorial(k) * factorial(n - 2 * k));
        term <<= (n - 2 * k);
        c[n - 2 * k] = (k % 2 == 0) ? term : BigInt{-term};
    }
    return IntPoly1{std::move(c)};
}

/// Left-coefficient series with the (real) coefficients of p.
[[nodiscard]] inline QSeries to_qseries(const IntPoly1& p) {
    QSeries s{CoeffSide::Left, {}};
    for (const BigInt& c : p.coeffs()) s.coeffs.emplace_back(to_double(c));
    if (s.coeffs.empty()) s.coeffs.emplace_back();
    return s;
}

/// H_0..H_N at x by H_{k+1} = 2x H_k - 2k H_{k-1}. x may be double, Complex or Quaternion.
template <class S>
[[nodiscard]] std::vector<S> hermite_table(unsigned N, const S& x) {
    std::vector<S> h;
    h.reserve(N + 1);
    h.push_back(S{1.0});
    if (N >= 1) h.push_back(2.0 * x);
    for (unsigned k = 1; k < N; ++k) h.push_back(2.0 * (x * h[k]) - (2.0 * k) * h[k - 1]);
    return h;
}

inline constexpr unsigned hermite_default_max_n = 150;

[[nodiscard]] inline Complex hermite_z(unsigned n, Complex z, unsigned max_n = hermite_default_max_n) {
    if (n > max_n) throw OverflowError("hermite_z: degree beyond the overflow guard");
    const Complex v = hermite_table(n, z).back();
    if (!detail::finite(v)) throw OverflowError("hermite_z: value overflowed");
    return v;
}

[[nodiscard]] inline Quaternion hermite_q(unsigned n, const Quaternion& q, unsigned max_n = hermite_default_max_n) {
    if (n > max_n) throw OverflowError("hermite_q: degree beyond the overflow guard");
    const Quaternion v = hermite_table(n, q).back();
    if (!detail::finite(v)) throw OverflowError("hermite_q: value overflowed");
    return v;
}

/// Evaluates the explicit alternating sum term by term (independent of the recursion).
[[nodiscard]] inline Quaternion hermite_q_explicit(unsigned n, const Quaternion& q) {
    const IntPoly1 p = hermite_explicit(n);
    return p.evaluate(q);
}

/// sum_k |c_k| |q|^k for the explicit sum: the scale against which its round-off is measured.
[[nodiscard]] inline double hermite_majorant(unsigned n, double r) {
    const IntPoly1 p = hermite_explicit(n);
    double sum = 0.0;
    double power = 1.0;
    for (const BigInt& c : p.coeffs()) {
        sum += std::abs(to_double(c)) * power;
        power *= r;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Normalization b_n(s)
// ---------------------------------------------------------------------------

struct NormConst {
    double s = 0.5;
    unsigned n = 0;
    double value = 0.0;
};

inline void check_s(double s) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0, 1)");
}

/// (pi sqrt(s) / (1-s)) (2(1+s)/(1-s))^n n!
[[nodiscard]] inline NormConst b_n(double s, unsigned n) {
    check_s(s);
    const double c = 2.0 * (1.0 + s) / (1.0 - s);
    double v = std::numbers::pi * std::sqrt(s) / (1.0 - s);
    for (unsigned k = 1; k <= n; ++k) v *= c * k;
    if (!std::isfinite(v)) throw OverflowError("b_n: value overflowed");
    return {s, n, v};
}

/// H_0^s..H_N^s at x, H_n^s = H_n / sqrt(b_n(s)), by the rescaled three-term recursion.
template <class S>
[[nodiscard]] std::vector<S> hermite_normalized_table(unsigned N, const S& x, double s) {
    check_s(s);
    const double c = 2.0 * (1.0 + s) / (1.0 - s);
    std::vector<S> h;
    h.reserve(N + 1);
    h.push_back(S{1.0 / std::sqrt(b_n(s, 0).value)});
    if (N >= 1) h.push_back((2.0 / std::sqrt(c)) * (x * h[0]));
    for (unsigned k = 1; k < N; ++k) {
        const double a = 2.0 / std::sqrt((k + 1) * c);
        const double b = 2.0 * k / std::sqrt((k + 1) * c * k * c);
        h.push_back(a * (x * h[k]) - b * h[k - 1]);
    }
    return h;
}

[[nodiscard]] inline Quaternion hermite_q_normalized(unsigned n, const Quaternion& q, double s,
                                                     unsigned max_n = hermite_default_max_n) {
    if (n > max_n) throw OverflowError("hermite_q_normalized: degree beyond the overflow guard");
    const Quaternion v = hermite_normalized_table(n, q, s).back();
    if (!detail::finite(v)) throw OverflowError("hermite_q_normalized: value overflowed");
    return v;
}

[[nodiscard]] inline Complex hermite_z_normalized(unsigned n, Complex z, double s) {
    return hermite_normalized_table(n, z, s).back();
}

// ---------------------------------------------------------------------------
// h_{n,m}(z, zbar) and H_{n,m}(z, zbar)
// ---------------------------------------------------------------------------

/// h_{n+1,m} = zbar h_{n,m} - d/dz h_{n,m}, h_{0,m} = z^m. Top term z^m zbar^n.
[[nodiscard]] inline ZZbarPoly h_nm_poly(unsigned n, unsigned m) {
    if (n == 0) return ZZbarPoly::monomial(m, 0, BigInt{1});
    return detail::h_nm_cache().get(n, m, [&] {
        const ZZbarPoly prev = h_nm_poly(n - 1, m);
        return prev.times_zbar() - prev.d_z();
    });
}

/// H_{n+1,m} = zbar H_{n,m} - 2 d/dz H_{n,m}, H_{0,m} = z^m.
[[nodiscard]] inline ZZbarPoly H_nm_poly(unsigned n, unsigned m) {
    if (n == 0) return ZZbarPoly::monomial(m, 0, BigInt{1});
    return detail::H_nm_cache().get(n, m, [&] {
        const ZZbarPoly prev = H_nm_poly(n - 1, m);
        return prev.times_zbar() - prev.d_z() * BigInt{2};
    });
}

/// n! m! sum_j zbar^(n-j)/(n-j)! z^(m-j)/(m-j)!, the closed sum without alternating weights.
[[nodiscard]] inline ZZbarPoly h_nm_closed_unsigned(unsigned n, unsigned m) {
    ZZbarPoly p;
    const BigInt nm = factorial(n) * factorial(m);
    for (unsigned j = 0; j <= std::min(n, m); ++j) {
        p.add(m - j, n - j, nm / (factorial(n - j) * factorial(m - j)));
    }
    return p;
}

/// n! m! sum_j (-1)^j / j! zbar^(n-j)/(n-j)! z^(m-j)/(m-j)!
[[nodiscard]] inline ZZbarPoly h_nm_closed_alternating(unsigned n, unsigned m) {
    ZZbarPoly p;
    const BigInt nm = factorial(n) * factorial(m);
    for (unsigned j = 0; j <= std::min(n, m); ++j) {
        BigInt c = nm / (factorial(j) * factorial(n - j) * factorial(m - j));
        p.add(m - j, n - j, (j % 2 == 0) ? c : BigInt{-c});
    }
    return p;
}

[[nodiscard]] inline Complex h_nm_eval_z(unsigned n, unsigned m, Complex z) { return h_nm_poly(n, m).evaluate(z); }

/// z^i zbar^j -> q^i conj(q)^j; q and conj(q) commute.
[[nodiscard]] inline Quaternion h_nm_eval_q(unsigned n, unsigned m, const Quaternion& q) {
    const Quaternion v = h_nm_poly(n, m).evaluate(q);
    if (!detail::finite(v)) throw OverflowError("h_nm_eval_q: value overflowed");
    return v;
}

/**
 * g_{n,m}(x) = h_{n,m}(x, conj x) / sqrt(n! m!) for m = 0..M at fixed n, from
 * g_{k,0} = conj(x)^k / sqrt(k!) and g_{k,m+1} = (x g_{k,m} - sqrt(k) g_{k-1,m}) / sqrt(m+1).
 */
template <class S>
[[nodiscard]] std::vector<S> h_nm_normalized_row(unsigned n, unsigned M, const S& x) {
    const S xb = detail::conjugate(x);
    std::vector<S> prev;  // row k-1
    std::vector<S> row(M + 1);
    S start{1.0};
    for (unsigned k = 0; k <= n; ++k) {
        if (k > 0) start = (1.0 / std::sqrt(static_cast<double>(k))) * (xb * start);
        row[0] = start;
        for (unsigned m = 0; m < M; ++m) {
            S next = x * row[m];
            if (k > 0) next -= std::sqrt(static_cast<double>(k)) * prev[m];
            row[m + 1] = (1.0 / std::sqrt(m + 1.0)) * next;
        }
        prev = row;
    }
    return row;
}

/// Terminating 1F1(-n; m-n+1; z zbar / 2) form of H_{n,m}, exact. Requires m >= n.
[[nodiscard]] inline RationalBiPoly kummer_poly(unsigned n, unsigned m) {
    if (m < n) throw DomainError("kummer form needs m >= n");
    BigInt minus_two_n = 1;
    for (unsigned k = 0; k < n; ++k) minus_two_n *= -2;
    const Rational pre = Rational{factorial(m) / factorial(m - n) * minus_two_n};
    RationalBiPoly p;
    Rational term = 1;  // (-n)_k / ((m-n+1)_k k!) 2^-k
    for (unsigned k = 0; k <= n; ++k) {
        p.add(m - n + k, k, pre * term);
        term *= Rational{-static_cast<long>(n - k), static_cast<long>(2 * (m - n + 1 + k) * (k + 1))};
    }
    return p;
}

[[nodiscard]] inline Complex kummer_form(unsigned n, unsigned m, Complex z) {
    if (m < n) throw DomainError("kummer form needs m >= n");
    const double x = std::norm(z) / 2.0;
    double sum = 0.0;
    double term = 1.0;
    for (unsigned k = 0; k <= n; ++k) {
        sum += term;
        term *= -static_cast<double>(n - k) * x / ((m - n + 1.0 + k) * (k + 1.0));
    }
    return to_double(factorial(m) / factorial(m - n)) * std::pow(z, static_cast<int>(m - n)) * std::pow(-2.0, n) * sum;
}

/// H_{n,m}(z,zbar) coefficients against h_{n,m}(z/sqrt2, zbar/sqrt2) 2^{(n+m)/2}; exact when it holds.
[[nodiscard]] inline bool scaling_bridge_holds(unsigned n, unsigned m) {
    const ZZbarPoly big = H_nm_poly(n, m);
    const ZZbarPoly small = h_nm_poly(n, m);
    ZZbarPoly scaled;
    for (const auto& [e, c] : small.terms()) {
        const unsigned drop = n + m - e.first - e.second;
        if (drop % 2 != 0) return false;
        scaled.add(e.first, e.second, c << (drop / 2));
    }
    return scaled == big;
}

/**
 * Expands exp[(a zbar + abar z - a abar)/2] to total degree N in (a, abar) with rational
 * coefficients and compares each a^n abar^m coefficient with H_{n,m} / (2^{n+m} n! m!).
 */
[[nodiscard]] inline bool gen_func_check(unsigned N) {
    using Key = std::array<unsigned, 4>;  // powers of a, abar, z, zbar
    using Poly4 = std::map<Key, Rational>;
    const auto add = [](Poly4& p, const Key& k, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = p.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) p.erase(it);
        }
    };
    const Poly4 X{{{1, 0, 0, 1}, Rational{1, 2}}, {{0, 1, 1, 0}, Rational{1, 2}}, {{1, 1, 0, 0}, Rational{-1, 2}}};

    Poly4 total{{{0, 0, 0, 0}, Rational{1}}};
    Poly4 power = total;
    for (unsigned k = 1; k <= N; ++k) {
        Poly4 next;
        for (const auto& [ka, ca] : power) {
            for (const auto& [kb, cb] : X) {
                if (ka[0] + kb[0] + ka[1] + kb[1] > N) continue;
                add(next, {ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]}, ca * cb / k);
            }
        }
        power = std::move(next);
        for (const auto& [key, c] : power) add(total, key, c);
    }

    std::map<Exponents, RationalBiPoly> by_order;
    for (const auto& [key, c] : total) by_order[{key[0], key[1]}].add(key[2], key[3], c);
    for (unsigned n = 0; n <= N; ++n) {
        for (unsigned m = 0; n + m <= N; ++m) {
            RationalBiPoly got = by_order[{n, m}];
            got *= Rational{(factorial(n) * factorial(m)) << (n + m)};
            if (got != to_rational(H_nm_poly(n, m))) return false;
        }
    }
    return true;
}

} // namespace qherm
