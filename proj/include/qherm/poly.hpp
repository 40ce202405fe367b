#pragma once

/**
 * @file poly.hpp
 * @brief Exact-coefficient polynomials: univariate in x, bivariate in (z, zbar).
 *
 * Coefficients are arbitrary precision (boost::multiprecision). Floating evaluation only
 * happens at the boundary, through evaluate().
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "qherm/quaternion.hpp"

namespace qherm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <class C>
[[nodiscard]] double to_double(const C& c) {
    return static_cast<double>(c);
}

[[nodiscard]] inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

[[nodiscard]] inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// ---------------------------------------------------------------------------
// Univariate
// ---------------------------------------------------------------------------

/// sum_k c[k] x^k; the coefficient vector carries no trailing zeros.
template <class C>
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

    [[nodiscard]] static Poly1 monomial(std::size_t k, C value) {
        std::vector<C> c(k + 1, C{0});
        c[k] = std::move(value);
        return Poly1{std::move(c)};
    }

    [[nodiscard]] const std::vector<C>& coeffs() const { return c_; }
    [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] C coeff(std::size_t k) const { return k < c_.size() ? c_[k] : C{0}; }

    [[nodiscard]] Poly1 times_x() const {
        if (c_.empty()) return {};
        std::vector<C> c(c_.size() + 1, C{0});
        for (std::size_t k = 0; k < c_.size(); ++k) c[k + 1] = c_[k];
        return Poly1{std::move(c)};
    }

    [[nodiscard]] Poly1 derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<C> c(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * static_cast<unsigned>(k);
        return Poly1{std::move(c)};
    }

    Poly1& operator+=(const Poly1& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C{0});
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Poly1& operator-=(const Poly1& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C{0});
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Poly1& operator*=(const C& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }

    friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
    friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
    friend Poly1 operator*(Poly1 a, const C& s) { return a *= s; }
    friend Poly1 operator*(const C& s, Poly1 a) { return a *= s; }
    friend bool operator==(const Poly1&, const Poly1&) = default;

    /// Ascending-power evaluation at any ring element with real scalars embedded (double, Complex, Quaternion).
    template <class S>
    [[nodiscard]] S evaluate(const S& x) const {
        S sum{};
        S power{1.0};
        for (const C& v : c_) {
            sum += to_double(v) * power;
            power = power * x;
        }
        return sum;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<C> c_;
};

using IntPoly1 = Poly1<BigInt>;

template <class C>
std::ostream& operator<<(std::ostream& os, const Poly1<C>& p) {
    bool first = true;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        if (p.coeffs()[k] == 0) continue;
        if (!first) os << " + ";
        os << p.coeffs()[k];
        if (k > 0) os << " x^" << k;
        first = false;
    }
    if (first) os << 0;
    return os;
}

// ---------------------------------------------------------------------------
// Bivariate in (z, zbar)
// ---------------------------------------------------------------------------

/// Exponents (i, j) of the monomial z^i zbar^j.
using Exponents = std::pair<unsigned, unsigned>;

/// Sparse sum_{i,j} c_ij z^i zbar^j with no stored zero coefficients.
template <class C>
class BiPoly {
public:
    using Terms = std::map<Exponents, C>;

    BiPoly() = default;

    [[nodiscard]] static BiPoly monomial(unsigned i, unsigned j, C value) {
        BiPoly p;
        p.add(i, j, std::move(value));
        return p;
    }
    [[nodiscard]] static BiPoly constant(C value) { return monomial(0, 0, std::move(value)); }

    [[nodiscard]] const Terms& terms() const { return t_; }
    [[nodiscard]] bool is_zero() const { return t_.empty(); }
    [[nodiscard]] C coeff(unsigned i, unsigned j) const {
        const auto it = t_.find({i, j});
        return it == t_.end() ? C{0} : it->second;
    }

    void add(unsigned i, unsigned j, const C& value) {
        if (value == 0) return;
        auto [it, inserted] = t_.try_emplace({i, j}, value);
        if (!inserted) {
            it->second += value;
            if (it->second == 0) t_.erase(it);
        }
    }

    [[nodiscard]] BiPoly times_z() const { return shifted(1, 0); }
    [[nodiscard]] BiPoly times_zbar() const { return shifted(0, 1); }

    [[nodiscard]] BiPoly d_z() const {
        BiPoly out;
        for (const auto& [e, c] : t_) {
            if (e.first > 0) out.add(e.first - 1, e.second, c * e.first);
        }
        return out;
    }
    [[nodiscard]] BiPoly d_zbar() const {
        BiPoly out;
        for (const auto& [e, c] : t_) {
            if (e.second > 0) out.add(e.first, e.second - 1, c * e.second);
        }
        return out;
    }

    /// z <-> zbar. For real coefficients this is complex conjugation.
    [[nodiscard]] BiPoly swapped() const {
        BiPoly out;
        for (const auto& [e, c] : t_) out.add(e.second, e.first, c);
        return out;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [e, c] : o.t_) add(e.first, e.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [e, c] : o.t_) add(e.first, e.second, -c);
        return *this;
    }
    BiPoly& operator*=(const C& s) {
        if (s == 0) {
            t_.clear();
            return *this;
        }
        for (auto& [e, c] : t_) c *= s;
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(BiPoly a, const C& s) { return a *= s; }
    friend BiPoly operator*(const C& s, BiPoly a) { return a *= s; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        for (const auto& [ea, ca] : a.t_) {
            for (const auto& [eb, cb] : b.t_) out.add(ea.first + eb.first, ea.second + eb.second, ca * cb);
        }
        return out;
    }
    friend bool operator==(const BiPoly&, const BiPoly&) = default;

    /// sum c_ij z^i zbar^j for commuting z, zbar in any ring with real scalars embedded.
    template <class S>
    [[nodiscard]] S evaluate(const S& z, const S& zbar) const {
        S sum{};
        for (const auto& [e, c] : t_) {
            S term{to_double(c)};
            for (unsigned k = 0; k < e.first; ++k) term = term * z;
            for (unsigned k = 0; k < e.second; ++k) term = term * zbar;
            sum += term;
        }
        return sum;
    }

    [[nodiscard]] Complex evaluate(Complex z) const { return evaluate<Complex>(z, std::conj(z)); }
    [[nodiscard]] Quaternion evaluate(const Quaternion& q) const { return evaluate<Quaternion>(q, conj(q)); }

private:
    [[nodiscard]] BiPoly shifted(unsigned di, unsigned dj) const {
        BiPoly out;
        for (const auto& [e, c] : t_) out.t_.emplace(Exponents{e.first + di, e.second + dj}, c);
        return out;
    }

    Terms t_;
};

using ZZbarPoly = BiPoly<BigInt>;
using RationalBiPoly = BiPoly<Rational>;

[[nodiscard]] inline RationalBiPoly to_rational(const ZZbarPoly& p) {
    RationalBiPoly out;
    for (const auto& [e, c] : p.terms()) out.add(e.first, e.second, Rational{c});
    return out;
}

template <class C>
std::ostream& operator<<(std::ostream& os, const BiPoly<C>& p) {
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!first) os << " + ";
        os << it->second;
        if (it->first.first > 0) os << " z^" << it->first.first;
        if (it->first.second > 0) os << " zb^" << it->first.second;
        first = false;
    }
    if (first) os << 0;
    return os;
}

} // namespace qherm
