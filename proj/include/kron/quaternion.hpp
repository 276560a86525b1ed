#pragma once

#include <stdexcept>
#include <string>

#include "kron/rational.hpp"

namespace kron {

// Quaternion stored as a pair of Gaussian rationals: q = a + b*j with the
// multiplication rule j*z = conj(z)*j, fixed once for the whole library.
// Under this rule (a,b)(c,d) = (ac - b*conj(d), ad + b*conj(c)).
struct Quaternion {
    GaussianRational a;  // 1 and i components
    GaussianRational b;  // j and k components

    Quaternion() = default;
    Quaternion(long v) : a(v), b(0) {}  // NOLINT(google-explicit-constructor)
    Quaternion(GaussianRational a_, GaussianRational b_) : a(std::move(a_)), b(std::move(b_)) {}

    static Quaternion unit_i() { return {GaussianRational::i(), GaussianRational(0)}; }
    static Quaternion unit_j() { return {GaussianRational(0), GaussianRational(1)}; }
    static Quaternion unit_k() { return {GaussianRational(0), GaussianRational::i()}; }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    Rational re() const { return a.re; }        // scalar part
    Rational i_part() const { return a.im; }
    Rational j_part() const { return b.re; }
    Rational k_part() const { return b.im; }
    bool is_real() const { return a.im == 0 && b.is_zero(); }
    Quaternion pure_part() const { return {GaussianRational(Rational(0), a.im), b}; }

    Quaternion conj() const { return {a.conj(), -b}; }

    // |q|^2 = |a|^2 + |b|^2
    Rational norm() const { return a.norm() + b.norm(); }

    Quaternion operator-() const { return {-a, -b}; }

    Quaternion& operator+=(const Quaternion& o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        a -= o.a;
        b -= o.b;
        return *this;
    }

    friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        return {p.a * q.a - p.b * q.b.conj(), p.a * q.b + p.b * q.a.conj()};
    }
    Quaternion inverse() const {
        if (is_zero()) throw std::domain_error("Quaternion: division by zero");
        Rational n = norm();
        Quaternion c = conj();
        return {{c.a.re / n, c.a.im / n}, {c.b.re / n, c.b.im / n}};
    }

    friend Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
    friend Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
    friend bool operator==(const Quaternion& p, const Quaternion& q) { return p.a == q.a && p.b == q.b; }
    friend bool operator!=(const Quaternion& p, const Quaternion& q) { return !(p == q); }

    // scale by a central (real rational) factor
    Quaternion scaled(const Rational& r) const {
        return {{a.re * r, a.im * r}, {b.re * r, b.im * r}};
    }
};

inline std::string quaternion_to_string(const Quaternion& q) {
    return "(" + scalar_to_string(q.a) + ") + (" + scalar_to_string(q.b) + ")j";
}

}  // namespace kron
