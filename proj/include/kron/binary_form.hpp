#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kron/rational.hpp"

namespace kron {

namespace detail {

// Univariate polynomials over Q(i), coefficient index = power.  Trailing
// zeros are allowed; deg() looks past them.
using Poly = std::vector<GaussianRational>;

inline long poly_deg(const Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<long>(i);
    return -1;  // zero polynomial
}

inline Poly poly_trim(Poly p) {
    long d = poly_deg(p);
    p.resize(static_cast<std::size_t>(d + 1));
    return p;
}

inline std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
    long dg = poly_deg(g);
    if (dg < 0) throw std::domain_error("polynomial division by zero");
    Poly r = poly_trim(f);
    long dr = poly_deg(r);
    if (dr < dg) return {Poly{}, std::move(r)};
    Poly q(static_cast<std::size_t>(dr - dg + 1));
    const GaussianRational lead_inv = g[static_cast<std::size_t>(dg)].inverse();
    while (dr >= dg) {
        GaussianRational c = r[static_cast<std::size_t>(dr)] * lead_inv;
        q[static_cast<std::size_t>(dr - dg)] = c;
        for (long i = 0; i <= dg; ++i)
            r[static_cast<std::size_t>(dr - dg + i)] -= c * g[static_cast<std::size_t>(i)];
        r[static_cast<std::size_t>(dr)] = GaussianRational(0);
        dr = poly_deg(r);
    }
    return {std::move(q), poly_trim(std::move(r))};
}

inline Poly poly_monic(Poly p) {
    long d = poly_deg(p);
    if (d < 0) return p;
    GaussianRational inv = p[static_cast<std::size_t>(d)].inverse();
    for (auto& c : p) c = inv * c;
    return p;
}

inline Poly poly_gcd(Poly a, Poly b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (poly_deg(b) >= 0) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = poly_monic(std::move(r));  // normalize each step to tame growth
    }
    return poly_monic(std::move(a));
}

}  // namespace detail

// Homogeneous polynomial in x0, x1 over Q(i); coeff(i) multiplies
// x0^(degree-i) * x1^i.  The zero form keeps its declared degree.
class BinaryForm {
  public:
    BinaryForm() : deg_(0), c_(1) {}
    explicit BinaryForm(long degree) : deg_(check_deg(degree)), c_(static_cast<std::size_t>(degree + 1)) {}
    BinaryForm(long degree, std::vector<GaussianRational> coeffs)
        : deg_(check_deg(degree)), c_(std::move(coeffs)) {
        if (c_.size() != static_cast<std::size_t>(deg_ + 1))
            throw std::invalid_argument("BinaryForm: coefficient count != degree + 1");
    }

    static BinaryForm zero(long degree) { return BinaryForm(degree); }
    static BinaryForm constant(GaussianRational v) { return BinaryForm(0, {std::move(v)}); }
    // c * x0^(d-i) x1^i
    static BinaryForm monomial(long degree, long i, GaussianRational c = GaussianRational(1)) {
        BinaryForm f(degree);
        f.c_[static_cast<std::size_t>(i)] = std::move(c);
        return f;
    }
    static BinaryForm x0() { return monomial(1, 0); }
    static BinaryForm x1() { return monomial(1, 1); }
    // a*x0 + b*x1
    static BinaryForm linear(GaussianRational a, GaussianRational b) {
        return BinaryForm(1, {std::move(a), std::move(b)});
    }

    long degree() const { return deg_; }
    const GaussianRational& coeff(long i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<GaussianRational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!v.is_zero()) return false;
        return true;
    }
    bool is_nonzero_constant() const { return deg_ == 0 && !c_[0].is_zero(); }

    // exponent of x1 dividing the form (min i with nonzero coeff)
    long x1_valuation() const {
        for (long i = 0; i <= deg_; ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) return i;
        return -1;
    }
    // exponent of x0 dividing the form
    long x0_valuation() const {
        for (long i = deg_; i >= 0; --i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) return deg_ - i;
        return -1;
    }

    GaussianRational evaluate(const GaussianRational& p0, const GaussianRational& p1) const {
        // Horner in x1/x0 would divide; use power tables instead
        std::vector<GaussianRational> pw0(static_cast<std::size_t>(deg_ + 1), GaussianRational(1));
        std::vector<GaussianRational> pw1(static_cast<std::size_t>(deg_ + 1), GaussianRational(1));
        for (long i = 1; i <= deg_; ++i) {
            pw0[static_cast<std::size_t>(i)] = pw0[static_cast<std::size_t>(i - 1)] * p0;
            pw1[static_cast<std::size_t>(i)] = pw1[static_cast<std::size_t>(i - 1)] * p1;
        }
        GaussianRational acc(0);
        for (long i = 0; i <= deg_; ++i) {
            if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
            acc += c_[static_cast<std::size_t>(i)] * pw0[static_cast<std::size_t>(deg_ - i)] *
                   pw1[static_cast<std::size_t>(i)];
        }
        return acc;
    }

    BinaryForm operator-() const {
        BinaryForm r(deg_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }
    friend BinaryForm operator+(const BinaryForm& f, const BinaryForm& g) {
        if (f.deg_ != g.deg_) throw std::invalid_argument("form sum: degree mismatch");
        BinaryForm r(f.deg_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = f.c_[i] + g.c_[i];
        return r;
    }
    friend BinaryForm operator-(const BinaryForm& f, const BinaryForm& g) { return f + (-g); }
    friend BinaryForm operator*(const GaussianRational& s, const BinaryForm& f) {
        BinaryForm r(f.deg_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = s * f.c_[i];
        return r;
    }
    friend BinaryForm operator*(const BinaryForm& f, const BinaryForm& g) {
        BinaryForm r(f.deg_ + g.deg_);
        for (long i = 0; i <= f.deg_; ++i) {
            if (f.c_[static_cast<std::size_t>(i)].is_zero()) continue;
            for (long j = 0; j <= g.deg_; ++j) {
                if (g.c_[static_cast<std::size_t>(j)].is_zero()) continue;
                r.c_[static_cast<std::size_t>(i + j)] +=
                    f.c_[static_cast<std::size_t>(i)] * g.c_[static_cast<std::size_t>(j)];
            }
        }
        return r;
    }
    friend bool operator==(const BinaryForm& f, const BinaryForm& g) {
        return f.deg_ == g.deg_ && f.c_ == g.c_;
    }
    friend bool operator!=(const BinaryForm& f, const BinaryForm& g) { return !(f == g); }

    // partial derivative; var 0 or 1
    BinaryForm derivative(int var) const {
        if (deg_ == 0) return BinaryForm::zero(0);
        BinaryForm r(deg_ - 1);
        for (long i = 0; i <= deg_ - 1; ++i) {
            if (var == 0)
                r.c_[static_cast<std::size_t>(i)] =
                    GaussianRational(Rational(deg_ - i)) * c_[static_cast<std::size_t>(i)];
            else
                r.c_[static_cast<std::size_t>(i)] =
                    GaussianRational(Rational(i + 1)) * c_[static_cast<std::size_t>(i + 1)];
        }
        return r;
    }

    // f(a*x0 + b*x1, c*x0 + d*x1)
    BinaryForm substitute(const GaussianRational& a, const GaussianRational& b,
                          const GaussianRational& c, const GaussianRational& d) const {
        BinaryForm l0 = BinaryForm::linear(a, b);
        BinaryForm l1 = BinaryForm::linear(c, d);
        std::vector<BinaryForm> pw0{BinaryForm::constant(GaussianRational(1))};
        std::vector<BinaryForm> pw1{BinaryForm::constant(GaussianRational(1))};
        for (long i = 1; i <= deg_; ++i) {
            pw0.push_back(pw0.back() * l0);
            pw1.push_back(pw1.back() * l1);
        }
        BinaryForm acc(deg_);
        for (long i = 0; i <= deg_; ++i) {
            if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
            acc = acc + c_[static_cast<std::size_t>(i)] *
                            (pw0[static_cast<std::size_t>(deg_ - i)] * pw1[static_cast<std::size_t>(i)]);
        }
        return acc;
    }

    BinaryForm conj_coeffs() const {
        BinaryForm r(deg_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].conj();
        return r;
    }

    // dehomogenize on the chart x0 = 1: coefficient index becomes the power of x1
    detail::Poly to_affine() const { return detail::poly_trim(c_); }

    static BinaryForm from_affine(const detail::Poly& p, long degree) {
        if (detail::poly_deg(p) > degree)
            throw std::invalid_argument("from_affine: polynomial degree exceeds target");
        BinaryForm f(degree);
        for (std::size_t i = 0; i < p.size(); ++i) f.c_[i] = p[i];
        return f;
    }

    // first-nonzero-coefficient normalization; gcds are reported in this form
    BinaryForm monic() const {
        for (long i = 0; i <= deg_; ++i)
            if (!c_[static_cast<std::size_t>(i)].is_zero()) {
                GaussianRational inv = c_[static_cast<std::size_t>(i)].inverse();
                return inv * *this;
            }
        return *this;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (long i = 0; i <= deg_; ++i) {
            const auto& v = c_[static_cast<std::size_t>(i)];
            if (v.is_zero()) continue;
            std::string term = scalar_to_string(v);
            if (term != "1" || i == 0) {
                if (term == "-1" && deg_ > 0) term = "-";
            }
            std::string mono;
            long e0 = deg_ - i;
            if (e0 > 0) mono += "x0" + (e0 > 1 ? "^" + std::to_string(e0) : "");
            if (i > 0) mono += std::string(e0 > 0 ? "*" : "") + "x1" + (i > 1 ? "^" + std::to_string(i) : "");
            std::string piece;
            if (mono.empty()) {
                piece = term == "-" ? "-1" : term;
            } else if (term == "1" && deg_ > 0) {
                piece = mono;
            } else if (term == "-") {
                piece = "-" + mono;
            } else {
                piece = term + "*" + mono;
            }
            if (!out.empty() && piece[0] != '-') out += "+";
            out += piece;
        }
        return out;
    }

  private:
    static long check_deg(long d) {
        if (d < 0) throw std::invalid_argument("BinaryForm: negative degree");
        return d;
    }

    long deg_;
    std::vector<GaussianRational> c_;
};

// x0^p * x1^q
inline BinaryForm power_monomial(long p, long q) { return BinaryForm::monomial(p + q, q); }

namespace detail {

inline std::optional<BinaryForm> form_det_rec(const std::vector<std::vector<BinaryForm>>& m,
                                              std::size_t col, std::vector<bool>& used) {
    if (col == m[0].size()) return BinaryForm::constant(GaussianRational(1));
    std::optional<BinaryForm> acc;
    int pos = 0;  // position among unused rows fixes the Laplace sign
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (used[r]) continue;
        const BinaryForm& a = m[r][col];
        if (!a.is_zero()) {
            used[r] = true;
            auto sub = form_det_rec(m, col + 1, used);
            used[r] = false;
            if (sub) {
                BinaryForm term = a * *sub;
                if (pos % 2 == 1) term = -term;
                acc = acc ? *acc + term : term;
            }
        }
        ++pos;
    }
    if (acc && acc->is_zero()) return std::nullopt;
    return acc;
}

}  // namespace detail

// Determinant of a square matrix of forms.  Requires consistent entry degrees
// (row and column weights); zero entries may carry any declared degree.
// Returns the zero form of degree 0 when the determinant vanishes.
inline BinaryForm form_det(const std::vector<std::vector<BinaryForm>>& m) {
    if (m.empty()) return BinaryForm::constant(GaussianRational(1));
    if (m.size() != m[0].size()) throw std::invalid_argument("form_det: non-square matrix");
    std::vector<bool> used(m.size(), false);
    auto d = detail::form_det_rec(m, 0, used);
    return d ? *d : BinaryForm::zero(0);
}

// Greatest common divisor via dehomogenized Euclid.  Shared powers of x1
// (the root at [1:0]) and of x0 (the root at [0:1]) are split off first so
// the affine cores have full degree and nonzero constant term.
inline BinaryForm form_gcd(const BinaryForm& f, const BinaryForm& g) {
    if (f.is_zero() && g.is_zero()) throw std::domain_error("form_gcd(0, 0)");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    const long q = std::min(f.x1_valuation(), g.x1_valuation());
    const long p = std::min(f.x0_valuation(), g.x0_valuation());

    auto core_affine = [](const BinaryForm& h) {
        detail::Poly a = h.to_affine();
        // strip the power of x1 (low zero coefficients)
        std::size_t shift = 0;
        while (shift < a.size() && a[shift].is_zero()) ++shift;
        return detail::Poly(a.begin() + static_cast<std::ptrdiff_t>(shift), a.end());
    };
    detail::Poly core = detail::poly_gcd(core_affine(f), core_affine(g));
    long cd = detail::poly_deg(core);
    BinaryForm result = power_monomial(p, q) * BinaryForm::from_affine(core, cd);
    return result.monic();
}

inline bool form_divides(const BinaryForm& g, const BinaryForm& f) {
    if (g.is_zero()) return f.is_zero();
    if (f.is_zero()) return true;
    if (f.degree() < g.degree()) return false;
    BinaryForm d = form_gcd(f, g);
    return d.degree() == g.degree();
}

struct FormDivision {
    BinaryForm quotient;   // degree deg f - deg g
    BinaryForm remainder;  // degree deg g, reduced along the division chart
    long chart_shift = 0;  // c in the shear x0 -> x0 + c*x1 that was used
    // identity: f = quotient * g + pi^(deg f - deg g) * remainder,
    // where pi = x0 - chart_shift * x1 is the chart variable.
    BinaryForm chart_variable() const {
        return BinaryForm::linear(GaussianRational(1), GaussianRational(-Rational(chart_shift)));
    }
};

// Euclidean division of forms on a chart where g keeps full degree.  The
// preferred chart is x0 = 1; when g vanishes at [0:1] the smallest integral
// shear x0 -> x0 + c*x1 with g(c,1) != 0 is applied and undone afterwards.
inline FormDivision form_divrem(const BinaryForm& f, const BinaryForm& g) {
    if (g.is_zero()) throw std::domain_error("form_divrem: zero divisor");
    if (f.degree() < g.degree()) throw std::domain_error("form_divrem: deg f < deg g");
    long c = 0;
    while (g.evaluate(GaussianRational(Rational(c)), GaussianRational(1)).is_zero()) ++c;
    const GaussianRational cc{Rational(c)};
    const BinaryForm fs = c == 0 ? f : f.substitute(GaussianRational(1), cc, GaussianRational(0), GaussianRational(1));
    const BinaryForm gs = c == 0 ? g : g.substitute(GaussianRational(1), cc, GaussianRational(0), GaussianRational(1));

    auto [q, r] = detail::poly_divmod(fs.to_affine(), gs.to_affine());
    BinaryForm qf = BinaryForm::from_affine(q, f.degree() - g.degree());
    BinaryForm rf = BinaryForm::from_affine(r, g.degree());
    if (c != 0) {
        const GaussianRational mc{Rational(-c)};
        qf = qf.substitute(GaussianRational(1), mc, GaussianRational(0), GaussianRational(1));
        rf = rf.substitute(GaussianRational(1), mc, GaussianRational(0), GaussianRational(1));
    }
    return {std::move(qf), std::move(rf), c};
}

}  // namespace kron
