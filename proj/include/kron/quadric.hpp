#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kron/matrix.hpp"
#include "kron/quaternion.hpp"
#include "kron/rng.hpp"

namespace kron {

using Vec4 = std::array<GaussianRational, 4>;

inline GaussianRational dot(const Vec4& a, const Vec4& b) {
    GaussianRational s(0);
    for (std::size_t i = 0; i < 4; ++i) s += a[i] * b[i];
    return s;
}

// the fixed antiholomorphic involution (z0,z1,z2,z3) -> (-conj z1, conj z0, -conj z3, conj z2)
inline Vec4 sigma4(const Vec4& z) {
    return {-(z[1].conj()), z[0].conj(), -(z[3].conj()), z[2].conj()};
}

inline bool vec4_zero(const Vec4& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

inline Vec4 vec4_scaled(const Vec4& v, const GaussianRational& s) {
    return {s * v[0], s * v[1], s * v[2], s * v[3]};
}

// line zeta -> ([a + b zeta], [c + d zeta]) inside the incidence quadric
struct QuadricLine {
    Vec4 a, b, c, d;
};

struct LineDiagnostics {
    bool ab_independent = false;
    bool cd_independent = false;
    bool ac_orthogonal = false;   // a.c = 0
    bool bd_orthogonal = false;   // b.d = 0
    bool cross_sum_zero = false;  // a.d + b.c = 0
    bool valid() const {
        return ab_independent && cd_independent && ac_orthogonal && bd_orthogonal && cross_sum_zero;
    }
};

inline LineDiagnostics line_validate(const QuadricLine& l) {
    LineDiagnostics d;
    auto independent = [](const Vec4& u, const Vec4& v) {
        Matrix m(2, 4);
        for (std::size_t j = 0; j < 4; ++j) {
            m.at(0, j) = u[j];
            m.at(1, j) = v[j];
        }
        return rank(m) == 2;
    };
    d.ab_independent = independent(l.a, l.b);
    d.cd_independent = independent(l.c, l.d);
    d.ac_orthogonal = dot(l.a, l.c).is_zero();
    d.bd_orthogonal = dot(l.b, l.d).is_zero();
    d.cross_sum_zero = (dot(l.a, l.d) + dot(l.b, l.c)).is_zero();
    return d;
}

enum class LineType { degenerate, generic };  // O(2)+O+O(1)^2 vs O(1)^4 normal bundle

inline LineType classify_line(const QuadricLine& l) {
    if (!line_validate(l).valid()) throw std::invalid_argument("classify_line: invalid line");
    // given the line conditions, a.d = 0 iff b.c = 0
    return dot(l.a, l.d).is_zero() ? LineType::degenerate : LineType::generic;
}

// real lines zeta -> ([x + zeta sigma(x)], [y + zeta sigma(y)])
struct RealLinePair {
    Vec4 x, y;

    bool conditions_hold() const {
        return dot(x, y).is_zero() && (dot(x, sigma4(y)) + dot(sigma4(x), y)).is_zero();
    }
};

inline QuadricLine real_line(const RealLinePair& p) {
    if (vec4_zero(p.x) || vec4_zero(p.y)) throw std::invalid_argument("real_line: zero vector");
    if (!p.conditions_hold()) throw std::invalid_argument("real_line: conditions violated");
    return {p.x, sigma4(p.x), p.y, sigma4(p.y)};
}

inline std::pair<Vec4, Vec4> tau_point(const Vec4& x, const Vec4& y) {
    return {sigma4(x), sigma4(y)};
}

// (q0, q1, p0, p1): homogeneous quaternion coordinates on the space of real lines
struct QuatTuple {
    Quaternion q0, q1, p0, p1;

    Quaternion product_sum() const { return q0 * p0 + q1 * p1; }
    bool on_x_infinity() const { return product_sum().is_zero(); }
};

inline bool is_x_infinity(const QuatTuple& t) { return t.on_x_infinity(); }

// line-side characterization: both extra pairings vanish on top of the real
// line conditions
inline bool is_x_infinity_line(const RealLinePair& p) {
    if (!p.conditions_hold()) throw std::invalid_argument("is_x_infinity_line: invalid pair");
    return dot(p.x, sigma4(p.y)).is_zero() && dot(sigma4(p.x), p.y).is_zero();
}

inline QuatTuple h_action(const Quaternion& u, const QuatTuple& t) {
    if (u.is_zero()) throw std::invalid_argument("h_action: u = 0");
    Quaternion ui = u.inverse();
    return {u * t.q0, u * t.q1, t.p0 * ui, t.p1 * ui};
}

inline QuatTuple tuple_scaled(const QuatTuple& t, const Rational& r) {
    return {t.q0.scaled(r), t.q1.scaled(r), t.p0.scaled(r), t.p1.scaled(r)};
}

// point of HP^1 in an affine chart with an explicit infinity marker
struct HPoint {
    bool infinite = false;
    Quaternion value;

    friend bool operator==(const HPoint& a, const HPoint& b) {
        if (a.infinite != b.infinite) return false;
        return a.infinite || a.value == b.value;
    }
};

// (q1^-1 q0, p1 p0^-1), each coordinate in its chart
inline std::pair<HPoint, HPoint> fibration(const QuatTuple& t) {
    if (t.q0.is_zero() && t.q1.is_zero()) throw std::invalid_argument("fibration: q pair is zero");
    if (t.p0.is_zero() && t.p1.is_zero()) throw std::invalid_argument("fibration: p pair is zero");
    HPoint first, second;
    if (t.q1.is_zero())
        first.infinite = true;
    else
        first.value = t.q1.inverse() * t.q0;
    if (t.p0.is_zero())
        second.infinite = true;
    else
        second.value = t.p1 * t.p0.inverse();
    return {first, second};
}

struct OrbitWitness {
    Quaternion u;
    Rational r;
};

enum class OrbitKind { with_witness, equivalent_real_only, distinct };

struct OrbitDecision {
    OrbitKind kind = OrbitKind::distinct;
    std::optional<OrbitWitness> witness;
    std::optional<Rational> r_squared;  // recorded when the scale is not a rational square
};

namespace detail {

inline bool rational_square_root(const Rational& v, Rational& out) {
    if (v <= 0) return false;
    mpz_class num = v.get_num(), den = v.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = Rational(rn, rd);
    return true;
}

}  // namespace detail

// Decide whether two tuples off the exceptional locus lie on the same
// GL(1,H) x R^* orbit, reconstructing the explicit group element when the
// scale factor is a rational square.
inline OrbitDecision orbit_equivalent(const QuatTuple& t1, const QuatTuple& t2) {
    for (const QuatTuple* t : {&t1, &t2}) {
        Quaternion s = t->product_sum();
        if (!s.pure_part().is_zero()) throw std::invalid_argument("orbit_equivalent: tuple not on X");
        if (s.is_zero()) throw std::invalid_argument("orbit_equivalent: tuple on the exceptional locus");
    }
    OrbitDecision out;
    if (!(fibration(t1) == fibration(t2))) return out;
    // w = r*u read off a nonzero q component, then r^2 from the p side
    const bool use_q1 = !t1.q1.is_zero();
    Quaternion w = use_q1 ? t2.q1 * t1.q1.inverse() : t2.q0 * t1.q0.inverse();
    const bool use_p0 = !t1.p0.is_zero();
    Quaternion rho_q = use_p0 ? t2.p0 * w * t1.p0.inverse() : t2.p1 * w * t1.p1.inverse();
    if (!rho_q.is_real()) return out;  // not actually related (guards corrupt input)
    const Rational rho = rho_q.re();
    if (rho <= 0) return out;
    // consistency of the remaining components: q~ = w q, p~ = rho p w^-1
    Quaternion wi = w.inverse();
    if (!(t2.q0 == w * t1.q0 && t2.q1 == w * t1.q1 && t2.p0 == (t1.p0 * wi).scaled(rho) &&
          t2.p1 == (t1.p1 * wi).scaled(rho)))
        return out;
    Rational r;
    if (!detail::rational_square_root(rho, r)) {
        out.kind = OrbitKind::equivalent_real_only;
        out.r_squared = rho;
        return out;
    }
    Quaternion u = w.scaled(1 / r);
    // verify the witness end to end
    QuatTuple check = tuple_scaled(h_action(u, t1), r);
    if (!(check.q0 == t2.q0 && check.q1 == t2.q1 && check.p0 == t2.p0 && check.p1 == t2.p1))
        throw std::logic_error("orbit_equivalent: witness verification failed");
    out.kind = OrbitKind::with_witness;
    out.witness = OrbitWitness{u, r};
    return out;
}

// ---------------------------------------------------------------------------
// flat metric of signature (8,8) on C^4 x C^4

// tangent vector: (xi, upsilon) = (dx, dy) components
struct FlatTangent {
    Vec4 xi;
    Vec4 ups;
};

// g = Re(dx1 d(conj y0) - dx0 d(conj y1) + dx3 d(conj y2) - dx2 d(conj y3)),
// with the symmetric-product 1/2 convention
inline Rational metric_eval(const FlatTangent& v, const FlatTangent& w) {
    GaussianRational acc(0);
    auto term = [&acc](const GaussianRational& a, const GaussianRational& b, bool minus) {
        GaussianRational t = a * b.conj();
        if (minus)
            acc -= t;
        else
            acc += t;
    };
    term(v.xi[1], w.ups[0], false);
    term(w.xi[1], v.ups[0], false);
    term(v.xi[0], w.ups[1], true);
    term(w.xi[0], v.ups[1], true);
    term(v.xi[3], w.ups[2], false);
    term(w.xi[3], v.ups[2], false);
    term(v.xi[2], w.ups[3], true);
    term(w.xi[2], v.ups[3], true);
    return acc.re / 2;
}

// real coordinates: (Re x0, Im x0, ..., Re x3, Im x3, Re y0, ..., Im y3)
inline FlatTangent real_basis_tangent(std::size_t index) {
    if (index >= 16) throw std::invalid_argument("real basis index out of range");
    FlatTangent t;
    const std::size_t slot = index / 2;
    GaussianRational v = (index % 2 == 0) ? GaussianRational(1) : GaussianRational::i();
    if (slot < 4)
        t.xi[slot] = v;
    else
        t.ups[slot - 4] = v;
    return t;
}

inline Matrix metric_gram_r16() {
    Matrix g(16, 16);
    std::vector<FlatTangent> basis;
    for (std::size_t i = 0; i < 16; ++i) basis.push_back(real_basis_tangent(i));
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) g.at(i, j) = GaussianRational(metric_eval(basis[i], basis[j]));
    return g;
}

// generator of the circle action with weights (+,-,+,-) on x and (-,+,-,+) on y
inline FlatTangent s1_field(const Vec4& x, const Vec4& y) {
    const GaussianRational I = GaussianRational::i();
    FlatTangent t;
    t.xi = {I * x[0], -(I * x[1]), I * x[2], -(I * x[3])};
    t.ups = {-(I * y[0]), I * y[1], -(I * y[2]), I * y[3]};
    return t;
}

// finite rotation at angle pi/2 of the same action
inline std::pair<Vec4, Vec4> s1_rotate_quarter(const Vec4& x, const Vec4& y) {
    const GaussianRational I = GaussianRational::i();
    Vec4 xr = {I * x[0], -I * x[1], I * x[2], -I * x[3]};
    Vec4 yr = {-I * y[0], I * y[1], -I * y[2], I * y[3]};
    return {xr, yr};
}

// the two moment-map functions cut out by the real-line conditions
inline GaussianRational moment_xy(const Vec4& x, const Vec4& y) { return dot(x, y); }
inline GaussianRational moment_sigma(const Vec4& x, const Vec4& y) {
    return dot(x, sigma4(y)) + dot(sigma4(x), y);
}

// ---------------------------------------------------------------------------
// quaternion-coordinate conventions

// A convention assigns (q0, q1, p0, p1) to (x, y) R-linearly.  The q side is
// the direct reading q_t = x_(2t) + x_(2t+1) j; each p slot is built from its
// y pair by an order choice and componentwise transforms v, conj v, -v,
// -conj v.  The printed assignment p_t = y_(2t) - j y_(2t+1) is variant 0.
struct PSlot {
    bool swapped = false;  // use (y_(2t+1), y_(2t)) instead of (y_(2t), y_(2t+1))
    int first_transform = 0;   // 0: v, 1: conj v, 2: -v, 3: -conj v
    int second_transform = 0;
};

struct Convention {
    PSlot p0, p1;
};

inline GaussianRational apply_transform(int t, const GaussianRational& v) {
    switch (t) {
        case 0: return v;
        case 1: return v.conj();
        case 2: return -v;
        default: return -(v.conj());
    }
}

inline Quaternion build_p(const PSlot& s, const GaussianRational& y_even, const GaussianRational& y_odd) {
    const GaussianRational& f = s.swapped ? y_odd : y_even;
    const GaussianRational& g = s.swapped ? y_even : y_odd;
    return {apply_transform(s.first_transform, f), apply_transform(s.second_transform, g)};
}

inline QuatTuple quat_tuple_from_xy(const Vec4& x, const Vec4& y, const Convention& c) {
    QuatTuple t;
    t.q0 = {x[0], x[1]};
    t.q1 = {x[2], x[3]};
    t.p0 = build_p(c.p0, y[0], y[1]);
    t.p1 = build_p(c.p1, y[2], y[3]);
    return t;
}

inline Convention printed_convention() {
    // p_t = y_(2t) - j y_(2t+1) = y_(2t) + (-conj y_(2t+1)) j
    return {{false, 0, 3}, {false, 0, 3}};
}

inline std::vector<Convention> convention_family() {
    std::vector<Convention> out;
    out.push_back(printed_convention());
    for (int sw0 = 0; sw0 < 2; ++sw0)
        for (int a0 = 0; a0 < 4; ++a0)
            for (int b0 = 0; b0 < 4; ++b0)
                for (int sw1 = 0; sw1 < 2; ++sw1)
                    for (int a1 = 0; a1 < 4; ++a1)
                        for (int b1 = 0; b1 < 4; ++b1) {
                            Convention c{{sw0 == 1, a0, b0}, {sw1 == 1, a1, b1}};
                            if (sw0 == 0 && a0 == 0 && b0 == 3 && sw1 == 0 && a1 == 0 && b1 == 3)
                                continue;  // printed variant already at index 0
                            out.push_back(c);
                        }
    return out;
}

namespace detail {

// complex-valued R-linear form in 8 real coordinates
using CLin = std::array<GaussianRational, 8>;

inline CLin clin_zero() { return CLin{}; }
inline CLin clin_conj(const CLin& f) {
    CLin out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = f[i].conj();
    return out;
}
inline CLin clin_neg(const CLin& f) {
    CLin out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = -f[i];
    return out;
}
inline CLin clin_transform(int t, const CLin& f) {
    switch (t) {
        case 0: return f;
        case 1: return clin_conj(f);
        case 2: return clin_neg(f);
        default: return clin_neg(clin_conj(f));
    }
}

// complex coordinate z_k as a form in the real coordinates
inline CLin coordinate_form(std::size_t k) {
    CLin f = clin_zero();
    f[2 * k] = GaussianRational(1);
    f[2 * k + 1] = GaussianRational::i();
    return f;
}

// complex-valued bilinear form (x-side reals) x (y-side reals), an 8x8 matrix
inline Matrix outer(const CLin& fx, const CLin& fy) {
    Matrix m(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        if (fx[i].is_zero()) continue;
        for (std::size_t j = 0; j < 8; ++j)
            if (!fy[j].is_zero()) m.at(i, j) = fx[i] * fy[j];
    }
    return m;
}

struct BilinearQuaternion {
    Matrix a{8, 8};
    Matrix b{8, 8};
};

// (A + Bj)(C + Dj) with A, B built from x-forms and C, D from y-forms
inline BilinearQuaternion quat_form_product(const CLin& A, const CLin& B, const CLin& C, const CLin& D) {
    BilinearQuaternion r;
    r.a = outer(A, C) - outer(B, clin_conj(D));
    r.b = outer(A, D) + outer(B, clin_conj(C));
    return r;
}

inline Matrix re_part(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = GaussianRational(m.at(i, j).re);
    return out;
}
inline Matrix im_part(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = GaussianRational(m.at(i, j).im);
    return out;
}

inline Vector flatten_matrix(const Matrix& m) {
    Vector v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

inline Matrix stack_flat(const std::vector<Matrix>& ms) {
    Matrix out(ms.size(), ms.empty() ? 0 : ms[0].rows() * ms[0].cols());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        Vector f = flatten_matrix(ms[i]);
        for (std::size_t j = 0; j < f.size(); ++j) out.at(i, j) = f[j];
    }
    return out;
}

}  // namespace detail

struct ConventionCheck {
    bool imh_matches = false;     // Im_H = 0 cuts exactly the two real-line conditions
    bool scalar_matches = false;  // Re part is a nonzero rational multiple of Re(x.sigma(y))
    Rational scalar_ratio = 0;
    bool certified() const { return imh_matches && scalar_matches; }
};

// symbolic check of one convention over generic (x, y)
inline ConventionCheck check_convention(const Convention& c) {
    using namespace detail;
    // q0 = x0 + x1 j, q1 = x2 + x3 j symbolically
    CLin X[4], Y[4];
    for (std::size_t k = 0; k < 4; ++k) {
        X[k] = coordinate_form(k);
        Y[k] = coordinate_form(k);
    }
    auto build_slot = [&](const PSlot& s, std::size_t t, CLin& Cf, CLin& Df) {
        const CLin& even = Y[2 * t];
        const CLin& odd = Y[2 * t + 1];
        Cf = clin_transform(s.first_transform, s.swapped ? odd : even);
        Df = clin_transform(s.second_transform, s.swapped ? even : odd);
    };
    CLin C0, D0, C1, D1;
    build_slot(c.p0, 0, C0, D0);
    build_slot(c.p1, 1, C1, D1);
    BilinearQuaternion s0 = quat_form_product(X[0], X[1], C0, D0);
    BilinearQuaternion s1 = quat_form_product(X[2], X[3], C1, D1);
    Matrix ma = s0.a + s1.a, mb = s0.b + s1.b;

    // target bilinear forms
    Matrix xy(8, 8), xsy(8, 8);
    for (std::size_t k = 0; k < 4; ++k) xy = xy + outer(X[k], Y[k]);
    // x . sigma(y): sigma(y) = (-conj y1, conj y0, -conj y3, conj y2)
    xsy = xsy - outer(X[0], clin_conj(Y[1]));
    xsy = xsy + outer(X[1], clin_conj(Y[0]));
    xsy = xsy - outer(X[2], clin_conj(Y[3]));
    xsy = xsy + outer(X[3], clin_conj(Y[2]));

    std::vector<Matrix> imh = {im_part(ma), re_part(mb), im_part(mb)};
    std::vector<Matrix> target = {re_part(xy), im_part(xy), im_part(xsy)};
    Matrix s_stack = stack_flat(imh);
    Matrix t_stack = stack_flat(target);
    const std::size_t rs = rank(s_stack), rt = rank(t_stack),
                      ru = rank(Matrix::vstack(s_stack, t_stack));
    ConventionCheck out;
    out.imh_matches = rs == 3 && rt == 3 && ru == 3;

    // scalar part proportional to Re(x . sigma(y))
    Matrix s0m = re_part(ma), t0m = re_part(xsy);
    Rational ratio;
    bool found = false, ok = true;
    for (std::size_t i = 0; i < 8 && ok; ++i)
        for (std::size_t j = 0; j < 8 && ok; ++j) {
            const Rational sv = s0m.at(i, j).re, tv = t0m.at(i, j).re;
            if (tv == 0) {
                if (sv != 0) ok = false;
                continue;
            }
            Rational r = sv / tv;
            if (!found) {
                ratio = r;
                found = true;
            } else if (r != ratio) {
                ok = false;
            }
        }
    out.scalar_matches = ok && found && ratio != 0;
    if (out.scalar_matches) out.scalar_ratio = ratio;
    return out;
}

struct ConventionReport {
    bool certified = false;
    long index = -1;  // index in the fixed enumeration; 0 is the printed assignment
    Convention convention;
    Rational scalar_ratio = 0;
    ConventionCheck printed_check;  // verdict for the printed variant, always recorded
};

inline ConventionReport certify_convention() {
    // the search has no inputs; run it once per process
    static const ConventionReport cached = [] {
        ConventionReport rep;
        std::vector<Convention> family = convention_family();
        rep.printed_check = check_convention(family[0]);
        for (std::size_t i = 0; i < family.size(); ++i) {
            ConventionCheck c = check_convention(family[i]);
            if (c.certified()) {
                rep.certified = true;
                rep.index = static_cast<long>(i);
                rep.convention = family[i];
                rep.scalar_ratio = c.scalar_ratio;
                break;
            }
        }
        return rep;
    }();
    return cached;
}

// ---------------------------------------------------------------------------
// the quaternion triple on the flat space and the HX Gram test

// candidate J action: pairwise rotation on each block, with or without
// conjugation, with a sign per block
struct HxConvention {
    bool found = false;
    bool x_conj = true, y_conj = true;
    int x_sign = 1, y_sign = 1;
};

inline FlatTangent apply_i(const FlatTangent& v) {
    const GaussianRational I = GaussianRational::i();
    FlatTangent out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.xi[k] = I * v.xi[k];
        out.ups[k] = I * v.ups[k];
    }
    return out;
}

namespace detail {

inline Vec4 pair_rotate(const Vec4& v, bool with_conj, int sign) {
    auto tr = [&](const GaussianRational& z) { return with_conj ? z.conj() : z; };
    Vec4 out = {-tr(v[1]), tr(v[0]), -tr(v[3]), tr(v[2])};
    if (sign < 0)
        for (auto& z : out) z = -z;
    return out;
}

}  // namespace detail

inline FlatTangent apply_j(const FlatTangent& v, const HxConvention& c) {
    return {detail::pair_rotate(v.xi, c.x_conj, c.x_sign), detail::pair_rotate(v.ups, c.y_conj, c.y_sign)};
}

inline FlatTangent apply_k(const FlatTangent& v, const HxConvention& c) { return apply_i(apply_j(v, c)); }

// search the finite family for J with J^2 = -1, IJ = -JI and g(J.,J.) = g
inline HxConvention find_hx_convention() {
    std::vector<FlatTangent> basis;
    for (std::size_t i = 0; i < 16; ++i) basis.push_back(real_basis_tangent(i));
    auto tangent_eq = [](const FlatTangent& a, const FlatTangent& b) {
        for (std::size_t k = 0; k < 4; ++k)
            if (a.xi[k] != b.xi[k] || a.ups[k] != b.ups[k]) return false;
        return true;
    };
    for (int xc = 1; xc >= 0; --xc)
        for (int yc = 1; yc >= 0; --yc)
            for (int xs : {1, -1})
                for (int ys : {1, -1}) {
                    HxConvention c{true, xc == 1, yc == 1, xs, ys};
                    bool ok = true;
                    for (const auto& e : basis) {
                        FlatTangent jj = apply_j(apply_j(e, c), c);
                        FlatTangent mi = {vec4_scaled(e.xi, GaussianRational(-1)),
                                          vec4_scaled(e.ups, GaussianRational(-1))};
                        if (!tangent_eq(jj, mi)) {
                            ok = false;
                            break;
                        }
                        FlatTangent ij = apply_i(apply_j(e, c));
                        FlatTangent ji = apply_j(apply_i(e), c);
                        FlatTangent mji = {vec4_scaled(ji.xi, GaussianRational(-1)),
                                           vec4_scaled(ji.ups, GaussianRational(-1))};
                        if (!tangent_eq(ij, mji)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) continue;
                    for (std::size_t i = 0; i < 16 && ok; ++i)
                        for (std::size_t j = i; j < 16 && ok; ++j)
                            if (metric_eval(apply_j(basis[i], c), apply_j(basis[j], c)) !=
                                metric_eval(basis[i], basis[j]))
                                ok = false;
                    if (ok) return c;
                }
    return {};
}

struct HxGram {
    Matrix gram{4, 4};
    bool nondegenerate = false;
};

// Gram matrix of {X, IX, JX, KX} at the point
inline HxGram hx_gram(const Vec4& x, const Vec4& y, const HxConvention& c) {
    if (!c.found) throw std::invalid_argument("hx_gram: no certified I,J,K convention");
    FlatTangent X = s1_field(x, y);
    std::vector<FlatTangent> v = {X, apply_i(X), apply_j(X, c), apply_k(X, c)};
    HxGram out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out.gram.at(i, j) = GaussianRational(metric_eval(v[i], v[j]));
    out.nondegenerate = !determinant(out.gram).is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// tautological map on the Grassmannian of 2-planes in C^4

struct GrassmannValue {
    Vector s;      // the section argument, kept as bookkeeping
    Vector coset;  // coordinates of z modulo the plane (dimension 2)

    bool is_zero() const {
        bool s_zero = true, c_zero = true;
        for (const auto& v : s) s_zero = s_zero && v.is_zero();
        for (const auto& v : coset) c_zero = c_zero && v.is_zero();
        return s_zero || c_zero;
    }
};

// alpha(s (x) z) = s (x) (z + H) for a 2-plane H given by two spanning rows
inline GrassmannValue grassmann_alpha(const Matrix& h, const Vector& s, const Vector& z) {
    if (h.rows() != 2 || h.cols() != 4) throw std::invalid_argument("grassmann_alpha: H must be 2x4");
    if (s.size() != 4 || z.size() != 4) throw std::invalid_argument("grassmann_alpha: vectors in C^4");
    Rref r = rref(h);
    if (r.pivot_cols.size() != 2) throw std::invalid_argument("grassmann_alpha: H is rank deficient");
    // s must lie in the span of H
    Matrix sys = Matrix::hstack(h.transpose(), Matrix::column(s));
    if (rank(sys) != 2) throw std::invalid_argument("grassmann_alpha: s outside the plane");
    // reduce z by the rref rows, then read the free coordinates
    Vector zz = z;
    for (std::size_t k = 0; k < 2; ++k) {
        const std::size_t p = r.pivot_cols[k];
        const GaussianRational f = zz[p];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < 4; ++j) zz[j] -= f * r.reduced.at(k, j);
    }
    GrassmannValue out;
    out.s = s;
    for (std::size_t j = 0; j < 4; ++j) {
        bool piv = j == r.pivot_cols[0] || j == r.pivot_cols[1];
        if (!piv) out.coset.push_back(zz[j]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// seeded generators

inline Vec4 random_vec4(Rng& rng, long lo = -9, long hi = 9) {
    Vec4 v;
    for (auto& c : v) c = rng.gaussian_integer(lo, hi);
    return v;
}

// random solution of the real-line conditions: x free, y drawn from the
// exact rational kernel of the three real linear constraints
inline RealLinePair random_real_line(Rng& rng) {
    while (true) {
        Vec4 x = random_vec4(rng, -9, 9);
        if (vec4_zero(x)) continue;
        // constraints on y in real coordinates: Re(x.y) = Im(x.y) = 0 and
        // Im(x.sigma(y)) = 0
        detail::CLin xy = detail::clin_zero(), xsy = detail::clin_zero();
        for (std::size_t k = 0; k < 4; ++k) {
            detail::CLin yk = detail::coordinate_form(k);
            for (std::size_t j = 0; j < 8; ++j) xy[j] += x[k] * yk[j];
        }
        const int sigma_sign[4] = {-1, 1, -1, 1};
        const std::size_t sigma_partner[4] = {1, 0, 3, 2};
        for (std::size_t k = 0; k < 4; ++k) {
            detail::CLin yk = detail::clin_conj(detail::coordinate_form(sigma_partner[k]));
            for (std::size_t j = 0; j < 8; ++j)
                xsy[j] += GaussianRational(Rational(sigma_sign[k])) * (x[k] * yk[j]);
        }
        Matrix sys(3, 8);
        for (std::size_t j = 0; j < 8; ++j) {
            sys.at(0, j) = GaussianRational(xy[j].re);
            sys.at(1, j) = GaussianRational(xy[j].im);
            sys.at(2, j) = GaussianRational(xsy[j].im);
        }
        auto kernel = kernel_basis(sys);
        if (kernel.empty()) continue;
        Vec4 y{};
        std::array<Rational, 8> yr{};
        for (const auto& kv : kernel) {
            long w = rng.uniform(-5, 5);
            if (w == 0) continue;
            for (std::size_t j = 0; j < 8; ++j) yr[j] += Rational(w) * kv[j].re;
        }
        for (std::size_t k = 0; k < 4; ++k) y[k] = GaussianRational(yr[2 * k], yr[2 * k + 1]);
        if (vec4_zero(y)) continue;
        RealLinePair p{x, y};
        if (p.conditions_hold()) return p;
        throw std::logic_error("random_real_line: kernel solution violates the conditions");
    }
}

}  // namespace kron
