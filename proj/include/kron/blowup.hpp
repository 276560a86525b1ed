#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

#include "kron/kronecker.hpp"
#include "kron/rng.hpp"

namespace kron {

// Section [a0, a1, b0, b1, c] of the line-blown-up P^3 fibered over P^1:
//   [x0, x1] -> ([a0 x0 + a1 x1, b0 x0 + b1 x1, -c x1, c x0], [x0, x1]).
// Homogeneous coordinates of a point of P^4 subject to:
// c = 0 implies a0 b1 - a1 b0 != 0.
struct BlowupSection {
    std::array<GaussianRational, 5> coords;

    const GaussianRational& a0() const { return coords[0]; }
    const GaussianRational& a1() const { return coords[1]; }
    const GaussianRational& b0() const { return coords[2]; }
    const GaussianRational& b1() const { return coords[3]; }
    const GaussianRational& c() const { return coords[4]; }

    GaussianRational ab_determinant() const { return a0() * b1() - a1() * b0(); }

    bool is_valid() const {
        bool all_zero = true;
        for (const auto& v : coords) all_zero = all_zero && v.is_zero();
        if (all_zero) return false;
        if (c().is_zero() && ab_determinant().is_zero()) return false;
        return true;
    }
    void require_valid() const {
        if (!is_valid()) throw std::invalid_argument("invalid blow-up section");
    }

    // first nonzero homogeneous coordinate, the pivot for coset reductions
    std::size_t pivot() const {
        for (std::size_t i = 0; i < 5; ++i)
            if (!coords[i].is_zero()) return i;
        throw std::invalid_argument("zero section");
    }
};

// image point in P^3 x P^1
struct BlowupPoint {
    std::array<GaussianRational, 4> z;
    std::array<GaussianRational, 2> x;

    GaussianRational incidence() const { return z[2] * x[0] + z[3] * x[1]; }
};

inline BlowupPoint section_eval(const BlowupSection& s, const GaussianRational& x0,
                                const GaussianRational& x1) {
    s.require_valid();
    if (x0.is_zero() && x1.is_zero()) throw std::invalid_argument("section_eval: zero P^1 point");
    BlowupPoint p;
    p.z = {s.a0() * x0 + s.a1() * x1, s.b0() * x0 + s.b1() * x1, -(s.c() * x1), s.c() * x0};
    p.x = {x0, x1};
    return p;
}

// tau-invariance of the section, allowing the projective scalar of the
// homogeneous representative; in the normalized gauge this is
// b0 = -conj(a1), b1 = conj(a0), c real
inline bool is_real_section(const BlowupSection& s) {
    s.require_valid();
    const GaussianRational &a0 = s.a0(), &a1 = s.a1(), &b0 = s.b0(), &b1 = s.b1(), &c = s.c();
    std::optional<GaussianRational> lambda;
    if (!a1.is_zero())
        lambda = -(b0.conj()) / a1;
    else if (!a0.is_zero())
        lambda = b1.conj() / a0;
    else if (!b1.is_zero())
        lambda = a0.conj() / b1;
    else if (!b0.is_zero())
        lambda = -(a1.conj()) / b0;
    else
        lambda = c.conj() / c;  // a = b = 0 forces c != 0
    const GaussianRational& l = *lambda;
    return -(b0.conj()) == l * a1 && b1.conj() == l * a0 && a0.conj() == l * b1 &&
           a1.conj() == -(l * b0) && c.conj() == l * c;
}

enum class SectionType { on_divisor, off_divisor };  // O(2)+O vs O(1)+O(1) normal bundle

inline SectionType classify_section(const BlowupSection& s) {
    s.require_valid();
    return s.c().is_zero() ? SectionType::on_divisor : SectionType::off_divisor;
}

// the induced 2-Kronecker module: C^2 (x) C^2 sits inside C^5 as the first
// four coordinates, and the value is the coset modulo the Euler line spanned
// by the section's coordinates
inline KroneckerModule blowup_module(const BlowupSection& s) {
    s.require_valid();
    const std::size_t p = s.pivot();
    const GaussianRational inv = s.coords[p].inverse();
    auto coset = [&](std::array<GaussianRational, 5> w) {
        const GaussianRational f = w[p] * inv;
        Vector out;
        out.reserve(4);
        for (std::size_t i = 0; i < 5; ++i) {
            if (i == p) continue;
            out.push_back(w[i] - f * s.coords[i]);
        }
        return out;
    };
    // slice z = e_0 sends (e1, e2) to (e1, 0, e2, 0, 0); slice z = e_1 to (0, e1, 0, e2, 0)
    std::vector<Matrix> maps;
    for (std::size_t which : {0u, 1u}) {
        Matrix m(4, 2);
        for (std::size_t col = 0; col < 2; ++col) {
            std::array<GaussianRational, 5> w{};
            w[2 * col + which] = GaussianRational(1);
            Vector v = coset(w);
            for (std::size_t row = 0; row < 4; ++row) m.at(row, col) = v[row];
        }
        maps.push_back(std::move(m));
    }
    return KroneckerModule(2, 4, std::move(maps));
}

// (a0, a1) in the chart c = 1; defined for sections off the divisor
inline std::pair<GaussianRational, GaussianRational> affine_chart(const BlowupSection& s) {
    s.require_valid();
    if (s.c().is_zero()) throw std::invalid_argument("affine_chart: section lies on the divisor");
    GaussianRational inv = s.c().inverse();
    return {s.a0() * inv, s.a1() * inv};
}

inline BlowupSection random_section(Rng& rng, bool on_divisor) {
    while (true) {
        BlowupSection s;
        for (std::size_t i = 0; i < 4; ++i) s.coords[i] = rng.gaussian_integer(-9, 9);
        s.coords[4] = on_divisor ? GaussianRational(0) : rng.gaussian_integer(-9, 9);
        if (!on_divisor && s.coords[4].is_zero()) continue;
        if (s.is_valid()) return s;
    }
}

inline BlowupSection random_real_section(Rng& rng) {
    while (true) {
        BlowupSection s;
        s.coords[0] = rng.gaussian_integer(-9, 9);
        s.coords[1] = rng.gaussian_integer(-9, 9);
        s.coords[2] = -(s.coords[1].conj());
        s.coords[3] = s.coords[0].conj();
        s.coords[4] = GaussianRational(Rational(rng.uniform(-9, 9)));
        if (s.is_valid()) return s;
    }
}

}  // namespace kron
