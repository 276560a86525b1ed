#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kron {

// Arbitrary-precision rational, kept canonical (coprime, positive denominator)
// by GMP itself.
using Rational = mpq_class;

inline Rational rational_of(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational_of: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string rational_to_string(const Rational& r) {
    return r.get_str();  // "p" or "p/q", canonical form
}

inline std::optional<Rational> rational_from_string(std::string_view s) {
    if (s.empty()) return std::nullopt;
    // accept [+-]digits[/digits]
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    if (i == s.size()) return std::nullopt;
    bool seen_slash = false;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] == '/') {
            if (seen_slash || j + 1 == s.size() || j == i) return std::nullopt;
            seen_slash = true;
        } else if (s[j] < '0' || s[j] > '9') {
            return std::nullopt;
        }
    }
    Rational r;
    std::string buf(s.begin() + (s[0] == '+' ? 1 : 0), s.end());
    if (r.set_str(buf, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

// Element of Q(i).  Complex conjugation is exact, which keeps every reality
// check in the library decidable.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(const Rational& r) : re(r), im(0) {}  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, Rational(-im)}; }

    // |z|^2, a rational
    Rational norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {Rational(-re), Rational(-im)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational inverse() const {
        if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = norm();
        return {re / n, -im / n};
    }
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }

// Text encoding: "p/q" for rationals, "p/q+r/si" for Gaussian rationals, both
// with optional parts; unit imaginary printed as "i"/"-i".
inline std::string scalar_to_string(const GaussianRational& z) {
    if (z.im == 0) return rational_to_string(z.re);
    std::string imag;
    if (z.im == 1) {
        imag = "i";
    } else if (z.im == -1) {
        imag = "-i";
    } else {
        imag = rational_to_string(z.im) + "i";
    }
    if (z.re == 0) return imag;
    std::string out = rational_to_string(z.re);
    if (imag[0] != '-') out += '+';
    return out + imag;
}

inline std::optional<GaussianRational> scalar_from_string(std::string_view s) {
    if (s.empty()) return std::nullopt;
    // split into one or two signed terms
    std::size_t split = std::string_view::npos;
    for (std::size_t j = 1; j < s.size(); ++j) {
        if (s[j] == '+' || s[j] == '-') {
            if (split != std::string_view::npos) return std::nullopt;
            split = j;
        }
    }
    auto parse_term = [](std::string_view t) -> std::optional<GaussianRational> {
        if (t.empty()) return std::nullopt;
        bool neg = t[0] == '-';
        if (t[0] == '+' || t[0] == '-') t.remove_prefix(1);
        if (t.empty()) return std::nullopt;
        bool imag = t.back() == 'i';
        if (imag) t.remove_suffix(1);
        Rational mag(1);
        if (!t.empty()) {
            auto r = rational_from_string(t);
            if (!r) return std::nullopt;
            mag = *r;
        } else if (!imag) {
            return std::nullopt;
        }
        if (neg) mag = -mag;
        if (imag) return GaussianRational(Rational(0), mag);
        return GaussianRational(mag);
    };
    if (split == std::string_view::npos) {
        return parse_term(s);
    }
    auto a = parse_term(s.substr(0, split));
    auto b = parse_term(s.substr(split));
    if (!a || !b) return std::nullopt;
    if (a->is_real() == b->is_real()) return std::nullopt;  // need one real, one imaginary
    return *a + *b;
}

inline GaussianRational scalar_checked(std::string_view s) {
    auto z = scalar_from_string(s);
    if (!z) throw std::invalid_argument("bad scalar literal: " + std::string(s));
    return *z;
}

}  // namespace kron
