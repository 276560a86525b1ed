#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kron/kronecker.hpp"
#include "kron/rng.hpp"
#include "kron/steiner.hpp"

namespace kron {

namespace detail {

// Laurent polynomial in the affine coordinate u = x1/x0, finite support
class Laurent {
  public:
    void add(long e, const GaussianRational& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = c_.try_emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    Laurent times_poly(const Poly& p) const {
        Laurent out;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i].is_zero()) continue;
            for (const auto& [e, v] : c_) out.add(e + static_cast<long>(i), p[i] * v);
        }
        return out;
    }
    Laurent nonneg_part() const {
        Laurent out;
        for (const auto& [e, v] : c_)
            if (e >= 0) out.c_.emplace(e, v);
        return out;
    }
    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, v] : o.c_) add(e, v);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, v] : o.c_) add(e, -v);
        return *this;
    }
    bool has_negative() const { return !c_.empty() && c_.begin()->first < 0; }
    long max_exponent() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    Poly to_poly() const {
        Poly p;
        if (c_.empty()) return p;
        p.assign(static_cast<std::size_t>(c_.rbegin()->first) + 1, GaussianRational(0));
        for (const auto& [e, v] : c_) p[static_cast<std::size_t>(e)] = v;
        return p;
    }

  private:
    std::map<long, GaussianRational> c_;
};

}  // namespace detail

struct CurveDiagnostics {
    bool basepoint_free = false;
    bool nondegenerate = false;
    bool immersed = false;
    BinaryForm component_gcd;   // gcd of the phi_i
    BinaryForm jacobian_gcd;    // gcd of the 2x2 minors of the Jacobian
    long coefficient_rank = 0;  // rank of the (n+1) x (d+1) coefficient matrix

    bool all_pass() const { return basepoint_free && nondegenerate && immersed; }
};

// Tangent vector at a parametrized curve: an (n+1)-tuple of degree-d forms,
// taken modulo the Jacobian applied to pairs of linear forms.  The canonical
// representative has zero coordinates at the pivot positions of that image.
struct CurveTangent {
    std::vector<BinaryForm> rep;        // as constructed
    std::vector<BinaryForm> canonical;  // reduced coset representative
    Vector flat;                        // canonical, flattened

    bool is_zero() const {
        for (const auto& c : flat)
            if (!c.is_zero()) return false;
        return true;
    }
};

// Element of the explicit parameter space for sections of the down-twisted
// normal bundle: a pair of degree-(d-1) forms divisible by x1^2 plus a vector
// in C^(n+1); total dimension 2(d-2) + (n+1) = 2d + n - 3.
struct NormalTwistSection {
    BinaryForm p1;
    BinaryForm p2;
    Vector u;
};

struct QuaternionicCurveReport {
    bool equivariant = false;
    bool split_variant = false;           // which involution matched
    GaussianRational scalar;              // phi(antipode) = scalar * sigma(phi)
    bool structures_built = false;
    bool tau_squares_to_identity = false;
    bool j0_solved = false;
    bool j0_square_consistent = false;    // -identity standard, +identity split
    bool quaternionic = false;            // full module identity, exact
    std::string note;
    std::optional<Matrix> j0;             // solved structure on the section space
    std::optional<Matrix> tau;            // induced real structure on the tangent space
};

struct DimensionReport {
    long h0_normal = 0;
    long expected_dimension = 0;  // (n+1)d + n - 3
    long rank = 0;                // h0 of the (-1)-twist
    long expected_rank = 0;       // 2d + n - 3
    bool restriction_count_consistent = false;  // h0(N) = h0(N(-1)) + (n-1)d
    bool all_match() const {
        return h0_normal == expected_dimension && rank == expected_rank &&
               restriction_count_consistent;
    }
};

struct NormalSplitting {
    std::vector<long> degrees;  // sorted splitting type of the normal bundle
    bool balanced_constraints = false;  // degrees = (d+a, d+b), a,b >= 2, a+b = 2d-2
    long a = 0, b = 0;          // n = 3 only, a <= b
};

// Immersed rational curve of degree d in P^n, given by n+1 binary forms.
// All derived data (diagnostics, Jacobian, tangent-space reduction) is
// computed at construction, so values are immutable afterwards.
class RationalCurve {
  public:
    RationalCurve(long n, long d, std::vector<BinaryForm> phi)
        : n_(n), d_(d), phi_(std::move(phi)) {
        if (n_ < 3) throw std::invalid_argument("RationalCurve: ambient dimension must be >= 3");
        if (d_ < 3) throw std::invalid_argument("RationalCurve: degree must be >= 3");
        if (phi_.size() != static_cast<std::size_t>(n_ + 1))
            throw std::invalid_argument("RationalCurve: need n+1 components");
        for (const auto& f : phi_)
            if (f.degree() != d_) throw std::invalid_argument("RationalCurve: component degree != d");
        dphi0_.reserve(phi_.size());
        dphi1_.reserve(phi_.size());
        for (const auto& f : phi_) {
            dphi0_.push_back(f.derivative(0));
            dphi1_.push_back(f.derivative(1));
        }
        run_diagnostics();
        if (diag_.all_pass()) build_tangent_model();
    }

    long ambient() const { return n_; }
    long degree() const { return d_; }
    const std::vector<BinaryForm>& phi() const { return phi_; }
    const CurveDiagnostics& validate() const { return diag_; }
    bool is_valid() const { return diag_.all_pass(); }

    long tangent_dim() const { return (n_ + 1) * (d_ + 1) - 4; }
    long normal_param_dim() const { return 2 * d_ + n_ - 3; }

    // 0 -> O(1)^2 --Jacobian--> O(d)^(n+1) -> N -> 0
    SteinerResolution normal_resolution() const {
        require_valid();
        std::vector<std::vector<BinaryForm>> m(phi_.size());
        for (std::size_t i = 0; i < phi_.size(); ++i) m[i] = {dphi0_[i], dphi1_[i]};
        return SteinerResolution({1, 1}, std::vector<long>(phi_.size(), d_), std::move(m));
    }

    // h^0(N(-i)); the hyperplane class pulls back to degree d on the
    // parameter line, so this is the resolution's twist at -i*d
    long h0_normal(long i) const {
        require_valid();
        if (i < 0) throw std::invalid_argument("h0_normal: negative twist");
        return cohomology_at(resolution(), -i * d_).first;
    }
    long h1_normal(long i) const {
        require_valid();
        return cohomology_at(resolution(), -i * d_).second;
    }

    NormalSplitting normal_splitting() const {
        require_valid();
        NormalSplitting out;
        out.degrees = splitting_type(resolution());
        if (n_ == 3 && out.degrees.size() == 2) {
            out.a = out.degrees[0] - d_;
            out.b = out.degrees[1] - d_;
            out.balanced_constraints = out.a >= 2 && out.b >= 2 && out.a + out.b == 2 * d_ - 2;
        }
        return out;
    }

    // splitting of the restriction to a generic line of the section-space
    // bundle, driven by the h^0(N(-i)) list
    std::map<long, long> twistor_generic_splitting() const {
        require_valid();
        std::vector<long> h0s;
        for (long i = 0;; ++i) {
            long v = h0_normal(i);
            h0s.push_back(v);
            if (v == 0) break;
            if (i > 6) throw std::logic_error("h0(N(-i)) failed to reach zero");
        }
        return generic_section_splitting(h0s, normal_param_dim());
    }

    DimensionReport dimension_report() const {
        require_valid();
        DimensionReport r;
        r.h0_normal = h0_normal(0);
        r.expected_dimension = (n_ + 1) * d_ + n_ - 3;
        r.rank = h0_normal(1);
        r.expected_rank = normal_param_dim();
        r.restriction_count_consistent = r.h0_normal == r.rank + (n_ - 1) * d_;
        return r;
    }

    BinaryForm hyperplane_form(const Vector& t) const {
        if (t.size() != phi_.size()) throw std::invalid_argument("t length != n+1");
        BinaryForm f = BinaryForm::zero(d_);
        for (std::size_t i = 0; i < phi_.size(); ++i)
            if (!t[i].is_zero()) f = f + t[i] * phi_[i];
        return f;
    }

    CurveTangent tangent_from_rep(std::vector<BinaryForm> rep) const {
        require_valid();
        if (rep.size() != phi_.size()) throw std::invalid_argument("tangent: component count");
        for (const auto& f : rep)
            if (f.degree() != d_) throw std::invalid_argument("tangent: degree mismatch");
        CurveTangent t;
        t.rep = std::move(rep);
        t.flat = canonicalize(flatten(t.rep));
        t.canonical = unflatten(t.flat);
        return t;
    }

    // alpha(e (x) t): divide the Jacobian image of (p1, p2) by f_t, fix the
    // additive f_t-multiple ambiguity of the remainder by zeroing its
    // leading-slot coefficient, then add u * f_t and reduce to the canonical
    // coset representative.  The remainder is pinned to the deterministic
    // chart picked inside the division; a different admissible chart yields
    // the value at a relabeled section parameter (the slice image itself is
    // chart-free).
    CurveTangent alpha_eval(const NormalTwistSection& e, const Vector& t) const {
        require_valid();
        check_section(e);
        BinaryForm ft = hyperplane_form(t);
        if (ft.is_zero()) throw std::invalid_argument("alpha_eval: t = 0");
        // gauge slot: highest x1-power with a nonzero f_t coefficient
        long slot = d_ - ft.x0_valuation();
        const GaussianRational slot_inv = ft.coeff(slot).inverse();
        std::vector<BinaryForm> rep;
        rep.reserve(phi_.size());
        const bool p_zero = e.p1.is_zero() && e.p2.is_zero();
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            BinaryForm r = BinaryForm::zero(d_);
            if (!p_zero) {
                BinaryForm x = dphi0_[i] * e.p1 + dphi1_[i] * e.p2;
                if (!x.is_zero()) {
                    r = form_divrem(x, ft).remainder;
                    if (!r.coeff(slot).is_zero()) r = r - (r.coeff(slot) * slot_inv) * ft;
                }
            }
            if (!e.u[i].is_zero()) r = r + e.u[i] * ft;
            rep.push_back(std::move(r));
        }
        return tangent_from_rep(std::move(rep));
    }

    // basis of the section parameter space: x1^2-divisible monomial pairs,
    // then the u coordinates
    std::vector<NormalTwistSection> section_basis() const {
        std::vector<NormalTwistSection> basis;
        const BinaryForm zp = BinaryForm::zero(d_ - 1);
        Vector zu(phi_.size(), GaussianRational(0));
        for (long a = 0; a <= d_ - 3; ++a)
            basis.push_back({BinaryForm::monomial(d_ - 1, 2 + a), zp, zu});
        for (long a = 0; a <= d_ - 3; ++a)
            basis.push_back({zp, BinaryForm::monomial(d_ - 1, 2 + a), zu});
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            Vector u = zu;
            u[i] = GaussianRational(1);
            basis.push_back({zp, zp, u});
        }
        return basis;
    }

    // matrix of alpha( . (x) t) over the section basis, in the free (coset)
    // coordinates of the tangent space
    Matrix alpha_matrix(const Vector& t) const {
        auto basis = section_basis();
        Matrix m(static_cast<std::size_t>(tangent_dim()), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Vector col = free_coords(alpha_eval(basis[j], t).flat);
            for (std::size_t i = 0; i < col.size(); ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    long alpha_slice_rank(const Vector& t) const { return static_cast<long>(rank(alpha_matrix(t))); }

    // Gauge-free multiplication of a twisted normal-bundle section by a
    // degree-d form, through Cech data on the two standard charts.  The
    // section (p1, p2, u) has transition class p / (x0^(d-2) x1^d); the
    // product is computed by splitting pole parts, so it is linear in both
    // arguments with no division-chart choices anywhere.  Products of a
    // fixed section across different forms are therefore mutually coherent,
    // which the per-slice Euclidean formula does not guarantee.
    CurveTangent multiply_section(const NormalTwistSection& e, const BinaryForm& f) const {
        require_valid();
        check_section(e);
        if (f.degree() != d_) throw std::invalid_argument("multiply_section: form degree != d");
        // transition data h in the x0-trivialization: sum_c p_c u^(c - d)
        detail::Laurent h[2];
        for (long c = 0; c <= d_ - 1; ++c) {
            h[0].add(c - d_, e.p1.coeff(c));
            h[1].add(c - d_, e.p2.coeff(c));
        }
        const detail::Poly f_aff = f.to_affine();
        std::vector<BinaryForm> rep;
        rep.reserve(phi_.size());
        // c0 = nonnegative part of f*h, the chart-0 half of the O(1) split
        detail::Laurent c0[2] = {h[0].times_poly(f_aff).nonneg_part(),
                                 h[1].times_poly(f_aff).nonneg_part()};
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            const detail::Poly d0 = dphi0_[i].to_affine();
            const detail::Poly d1 = dphi1_[i].to_affine();
            // g0_i = u_i + [Dphi h]_(>=0)
            detail::Laurent g0;
            g0 += h[0].times_poly(d0).nonneg_part();
            g0 += h[1].times_poly(d1).nonneg_part();
            g0.add(0, e.u[i]);
            // G_i = f*g0_i - Dphi_i c0
            detail::Laurent big = g0.times_poly(f_aff);
            big -= c0[0].times_poly(d0);
            big -= c0[1].times_poly(d1);
            if (big.has_negative() || big.max_exponent() > d_)
                throw std::logic_error("multiply_section: product is not a degree-d form");
            rep.push_back(BinaryForm::from_affine(big.to_poly(), d_));
        }
        return tangent_from_rep(std::move(rep));
    }

    // matrix of the canonical multiplication over the section basis
    Matrix multiplication_matrix(const Vector& t) const {
        BinaryForm ft = hyperplane_form(t);
        if (ft.is_zero()) throw std::invalid_argument("multiplication_matrix: t = 0");
        auto basis = section_basis();
        Matrix m(static_cast<std::size_t>(tangent_dim()), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Vector col = free_coords(multiply_section(basis[j], ft).flat);
            for (std::size_t i = 0; i < col.size(); ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    // scheme-theoretic membership of s in the Jacobian image along the zero
    // divisor of f_t: f_t must divide every 3x3 minor of [Dphi | s]
    bool vanishing_check(const CurveTangent& s, const Vector& t) const {
        require_valid();
        BinaryForm ft = hyperplane_form(t);
        if (ft.is_zero()) throw std::invalid_argument("vanishing_check: t = 0");
        const std::size_t rows = phi_.size();
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = i + 1; j < rows; ++j)
                for (std::size_t k = j + 1; k < rows; ++k) {
                    std::vector<std::vector<BinaryForm>> m = {
                        {dphi0_[i], dphi1_[i], s.canonical[i]},
                        {dphi0_[j], dphi1_[j], s.canonical[j]},
                        {dphi0_[k], dphi1_[k], s.canonical[k]}};
                    BinaryForm det = form_det(m);
                    if (!form_divides(ft, det)) return false;
                }
        return true;
    }

    // the vanishing conditions as a linear system on degree-d tuples; its
    // kernel, pushed to the coset space, is the independent model of the
    // alpha image
    Matrix vanishing_subspace_free_coords(const Vector& t) const {
        require_valid();
        BinaryForm ft = hyperplane_form(t);
        if (ft.is_zero()) throw std::invalid_argument("t = 0");
        const long nn = flat_dim();
        // remainder coefficients of each 3x3 minor are linear in the tuple
        std::vector<Vector> rows_out;
        const std::size_t rows = phi_.size();
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = i + 1; j < rows; ++j)
                for (std::size_t k = j + 1; k < rows; ++k) {
                    // expand each minor along the q column; the cofactors are
                    // 2x2 Jacobian minors
                    BinaryForm cof_i = dphi0_[j] * dphi1_[k] - dphi0_[k] * dphi1_[j];
                    BinaryForm cof_j = dphi0_[k] * dphi1_[i] - dphi0_[i] * dphi1_[k];
                    BinaryForm cof_k = dphi0_[i] * dphi1_[j] - dphi0_[j] * dphi1_[i];
                    // minor(q) = cof_i q_i + cof_j q_j + cof_k q_k, degree 3d-2;
                    // require f_t | minor: all remainder coefficients vanish
                    auto add_rows = [&](const BinaryForm& cof, std::size_t comp) {
                        if (cof.is_zero()) return std::vector<std::pair<std::size_t, BinaryForm>>{};
                        std::vector<std::pair<std::size_t, BinaryForm>> cells;
                        for (long c = 0; c <= d_; ++c) {
                            BinaryForm prod = cof * BinaryForm::monomial(d_, c);
                            cells.emplace_back(flat_index(comp, c), form_divrem(prod, ft).remainder);
                        }
                        return cells;
                    };
                    std::vector<std::vector<std::pair<std::size_t, BinaryForm>>> cells = {
                        add_rows(cof_i, i), add_rows(cof_j, j), add_rows(cof_k, k)};
                    // one linear condition per remainder coefficient
                    for (long rc = 0; rc <= d_; ++rc) {
                        Vector row(static_cast<std::size_t>(nn), GaussianRational(0));
                        bool nonzero = false;
                        for (const auto& group : cells)
                            for (const auto& [pos, rem] : group) {
                                const GaussianRational& v = rem.coeff(rc);
                                if (!v.is_zero()) {
                                    row[pos] += v;
                                    nonzero = true;
                                }
                            }
                        if (nonzero) rows_out.push_back(std::move(row));
                    }
                }
        Matrix sys(rows_out.size(), static_cast<std::size_t>(nn));
        for (std::size_t i = 0; i < rows_out.size(); ++i)
            for (long j = 0; j < nn; ++j) sys.at(i, static_cast<std::size_t>(j)) = rows_out[i][static_cast<std::size_t>(j)];
        auto kernel = kernel_basis(sys);
        Matrix out(static_cast<std::size_t>(tangent_dim()), kernel.size());
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            Vector fc = free_coords(canonicalize(kernel[j]));
            for (std::size_t i = 0; i < fc.size(); ++i) out.at(i, j) = fc[i];
        }
        return out;
    }

    // the induced module with r = n+1 slices, V0 the section parameter
    // space, V1 the tangent coset space; built from the coherent Cech
    // multiplication so that one structure map serves every slice
    KroneckerModule curve_module() const {
        require_valid();
        std::vector<Matrix> maps;
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            Vector t(phi_.size(), GaussianRational(0));
            t[i] = GaussianRational(1);
            maps.push_back(multiplication_matrix(t));
        }
        return KroneckerModule(static_cast<std::size_t>(normal_param_dim()),
                               static_cast<std::size_t>(tangent_dim()), std::move(maps));
    }

    QuaternionicCurveReport quaternionic_report() const;

    // ---- tangent-space plumbing (public: the report and tests use it) ----

    long flat_dim() const { return static_cast<long>(phi_.size()) * (d_ + 1); }
    std::size_t flat_index(std::size_t component, long coeff) const {
        return component * static_cast<std::size_t>(d_ + 1) + static_cast<std::size_t>(coeff);
    }
    Vector flatten(const std::vector<BinaryForm>& forms) const {
        Vector v(static_cast<std::size_t>(flat_dim()));
        for (std::size_t i = 0; i < forms.size(); ++i)
            for (long c = 0; c <= d_; ++c) v[flat_index(i, c)] = forms[i].coeff(c);
        return v;
    }
    std::vector<BinaryForm> unflatten(const Vector& v) const {
        std::vector<BinaryForm> forms;
        for (std::size_t i = 0; i < phi_.size(); ++i) {
            std::vector<GaussianRational> c(static_cast<std::size_t>(d_ + 1));
            for (long j = 0; j <= d_; ++j) c[static_cast<std::size_t>(j)] = v[flat_index(i, j)];
            forms.emplace_back(d_, std::move(c));
        }
        return forms;
    }
    // subtract the unique Jacobian-image combination that clears the pivots
    Vector canonicalize(Vector v) const {
        for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
            const GaussianRational f = v[pivot_cols_[r]];
            if (f.is_zero()) continue;
            for (long j = 0; j < flat_dim(); ++j) {
                const auto& rv = reduced_rows_.at(r, static_cast<std::size_t>(j));
                if (!rv.is_zero()) v[static_cast<std::size_t>(j)] -= f * rv;
            }
        }
        return v;
    }
    Vector free_coords(const Vector& canonical_flat) const {
        Vector out;
        out.reserve(static_cast<std::size_t>(tangent_dim()));
        for (long j = 0; j < flat_dim(); ++j)
            if (!is_pivot_[static_cast<std::size_t>(j)]) out.push_back(canonical_flat[static_cast<std::size_t>(j)]);
        return out;
    }
    Vector embed_free_coords(const Vector& coords) const {
        Vector v(static_cast<std::size_t>(flat_dim()));
        std::size_t p = 0;
        for (long j = 0; j < flat_dim(); ++j)
            if (!is_pivot_[static_cast<std::size_t>(j)]) v[static_cast<std::size_t>(j)] = coords[p++];
        return v;
    }
    const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }

  private:
    void require_valid() const {
        if (!diag_.all_pass()) throw std::invalid_argument("curve fails validation");
    }
    void check_section(const NormalTwistSection& e) const {
        auto ok_p = [this](const BinaryForm& p) {
            return p.degree() == d_ - 1 && (p.is_zero() || p.x1_valuation() >= 2);
        };
        if (!ok_p(e.p1) || !ok_p(e.p2))
            throw std::invalid_argument("section: p components must be degree d-1, divisible by x1^2");
        if (e.u.size() != phi_.size()) throw std::invalid_argument("section: u length != n+1");
    }

    void run_diagnostics() {
        // basepoint-free: gcd of the components is constant
        BinaryForm g = phi_[0];
        for (std::size_t i = 1; i < phi_.size(); ++i) {
            if (g.is_zero() && phi_[i].is_zero()) continue;
            g = form_gcd(g, phi_[i]);
        }
        diag_.component_gcd = g;
        diag_.basepoint_free = g.is_nonzero_constant();
        // nondegenerate: components linearly independent
        Matrix coeffs(phi_.size(), static_cast<std::size_t>(d_ + 1));
        for (std::size_t i = 0; i < phi_.size(); ++i)
            for (long c = 0; c <= d_; ++c) coeffs.at(i, static_cast<std::size_t>(c)) = phi_[i].coeff(c);
        diag_.coefficient_rank = static_cast<long>(rank(coeffs));
        diag_.nondegenerate = diag_.coefficient_rank == n_ + 1;
        // immersed: the 2x2 Jacobian minors have no common zero
        std::optional<BinaryForm> jg;
        for (std::size_t i = 0; i < phi_.size(); ++i)
            for (std::size_t j = i + 1; j < phi_.size(); ++j) {
                BinaryForm minor = dphi0_[i] * dphi1_[j] - dphi0_[j] * dphi1_[i];
                if (minor.is_zero()) continue;
                jg = jg ? form_gcd(*jg, minor) : minor.monic();
                if (jg->is_nonzero_constant()) break;
            }
        diag_.jacobian_gcd = jg ? *jg : BinaryForm::zero(0);
        diag_.immersed = jg && jg->is_nonzero_constant();
    }

    void build_tangent_model() {
        // images of the four basis linear pairs under the Jacobian
        std::vector<std::vector<BinaryForm>> gens;
        const BinaryForm lx0 = BinaryForm::x0(), lx1 = BinaryForm::x1();
        for (int which : {0, 1})
            for (const BinaryForm* l : {&lx0, &lx1}) {
                std::vector<BinaryForm> img;
                img.reserve(phi_.size());
                for (std::size_t i = 0; i < phi_.size(); ++i)
                    img.push_back((which == 0 ? dphi0_[i] : dphi1_[i]) * *l);
                gens.push_back(std::move(img));
            }
        Matrix m(gens.size(), static_cast<std::size_t>(flat_dim()));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Vector v = flatten(gens[i]);
            for (long j = 0; j < flat_dim(); ++j) m.at(i, static_cast<std::size_t>(j)) = v[static_cast<std::size_t>(j)];
        }
        Rref r = rref(m);
        if (r.pivot_cols.size() != 4)
            throw std::logic_error("immersed curve must have a 4-dimensional reparametrization image");
        pivot_cols_ = r.pivot_cols;
        reduced_rows_ = std::move(r.reduced);
        is_pivot_.assign(static_cast<std::size_t>(flat_dim()), false);
        for (std::size_t c : pivot_cols_) is_pivot_[c] = true;
    }

    SteinerResolution resolution() const { return normal_resolution(); }

    long n_, d_;
    std::vector<BinaryForm> phi_;
    std::vector<BinaryForm> dphi0_, dphi1_;
    CurveDiagnostics diag_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<bool> is_pivot_;
    Matrix reduced_rows_;
};

// rejection-sampled random immersed nondegenerate curve with small integer
// coefficients
inline RationalCurve random_curve(long d, long n, Rng& rng, long max_attempts = 4000) {
    for (long attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<BinaryForm> phi;
        phi.reserve(static_cast<std::size_t>(n + 1));
        for (long i = 0; i <= n; ++i) {
            std::vector<GaussianRational> c(static_cast<std::size_t>(d + 1));
            for (auto& v : c) v = GaussianRational(Rational(rng.uniform(-9, 9)));
            phi.emplace_back(d, std::move(c));
        }
        RationalCurve curve(n, d, std::move(phi));
        if (curve.is_valid()) return curve;
    }
    throw std::runtime_error("random_curve: no valid curve found");
}

namespace detail {

// phi-bar composed with the antiholomorphic parameter involution: the
// standard one sends (x0, x1) to (-x1, x0), the split one swaps them
inline BinaryForm involute(const BinaryForm& f, bool split) {
    const GaussianRational one(1), zero(0);
    return split ? f.conj_coeffs().substitute(zero, one, one, zero)
                 : f.conj_coeffs().substitute(zero, GaussianRational(-1), one, zero);
}

// the matching ambient involution on tuple indices: (z0,z1,z2,z3) goes to
// (-conj z1, conj z0, -conj z3, conj z2), or without signs for the split form
inline std::vector<std::pair<std::size_t, int>> tuple_pattern(bool split) {
    if (split) return {{1, 1}, {0, 1}, {3, 1}, {2, 1}};
    return {{1, -1}, {0, 1}, {3, -1}, {2, 1}};
}

}  // namespace detail

inline QuaternionicCurveReport RationalCurve::quaternionic_report() const {
    require_valid();
    QuaternionicCurveReport rep;
    if (n_ != 3) {
        rep.note = "equivariance detection only runs in P^3";
        return rep;
    }
    // detect phi(involution) = scalar * sigma(phi) for either involution
    for (bool split : {false, true}) {
        auto pattern = detail::tuple_pattern(split);
        std::vector<BinaryForm> lhs, rhs;
        for (std::size_t i = 0; i < 4; ++i) {
            lhs.push_back(detail::involute(phi_[i], split));
            rhs.push_back(pattern[i].second < 0 ? -phi_[pattern[i].first] : phi_[pattern[i].first]);
        }
        // find the scalar from the first nonzero coefficient pair
        GaussianRational scalar;
        bool found = false, match = true;
        for (std::size_t i = 0; i < 4 && !found; ++i)
            for (long c = 0; c <= d_ && !found; ++c)
                if (!rhs[i].coeff(c).is_zero()) {
                    scalar = lhs[i].coeff(c) / rhs[i].coeff(c);
                    found = true;
                }
        if (!found) continue;
        if (scalar.is_zero()) continue;
        for (std::size_t i = 0; i < 4 && match; ++i)
            if (lhs[i] != scalar * rhs[i]) match = false;
        if (match) {
            rep.equivariant = true;
            rep.split_variant = split;
            rep.scalar = scalar;
            break;
        }
    }
    if (!rep.equivariant) {
        rep.note = "curve is not equivariant for either involution";
        return rep;
    }

    const bool split = rep.split_variant;
    auto pattern = detail::tuple_pattern(split);
    // tau on tangent tuples: component i gets sign_i * S(q_(partner_i)),
    // where S conjugates coefficients and applies the parameter involution
    const long nn = flat_dim();
    Matrix t_full(static_cast<std::size_t>(nn), static_cast<std::size_t>(nn));
    for (std::size_t comp = 0; comp < 4; ++comp)
        for (long c = 0; c <= d_; ++c) {
            std::vector<BinaryForm> basis_tuple(4, BinaryForm::zero(d_));
            basis_tuple[comp] = BinaryForm::monomial(d_, c);
            std::vector<BinaryForm> out(4, BinaryForm::zero(d_));
            for (std::size_t i = 0; i < 4; ++i) {
                if (pattern[i].first != comp) continue;
                BinaryForm s = detail::involute(basis_tuple[comp], split);
                out[i] = pattern[i].second < 0 ? -s : s;
            }
            Vector col = flatten(out);
            for (long rr = 0; rr < nn; ++rr)
                t_full.at(static_cast<std::size_t>(rr), flat_index(comp, c)) = col[static_cast<std::size_t>(rr)];
        }
    // tau must descend to the coset space: it has to preserve the
    // reparametrization image
    for (std::size_t r = 0; r < 4; ++r) {
        Vector row(static_cast<std::size_t>(nn));
        for (long j = 0; j < nn; ++j) row[static_cast<std::size_t>(j)] = reduced_rows_.at(r, static_cast<std::size_t>(j)).conj();
        Vector image = t_full.apply(row);
        Vector canon = canonicalize(image);
        for (const auto& v : canon)
            if (!v.is_zero()) {
                rep.note = "tau does not preserve the reparametrization image";
                return rep;
            }
    }
    const long free_n = tangent_dim();
    Matrix t_free(static_cast<std::size_t>(free_n), static_cast<std::size_t>(free_n));
    {
        std::size_t col = 0;
        for (long j = 0; j < nn; ++j) {
            if (is_pivot_[static_cast<std::size_t>(j)]) continue;
            Vector e(static_cast<std::size_t>(nn));
            e[static_cast<std::size_t>(j)] = GaussianRational(1);
            Vector fc = free_coords(canonicalize(t_full.apply(e)));
            for (std::size_t i = 0; i < fc.size(); ++i) t_free.at(i, col) = fc[i];
            ++col;
        }
    }
    rep.structures_built = true;
    rep.tau_squares_to_identity = t_free * t_free.conjugate() == Matrix::identity(static_cast<std::size_t>(free_n));

    // solve the equivariance equations for sigma_0 on the section space
    KroneckerModule km = curve_module();
    SigmaInvolution sigma = split ? SigmaInvolution::split(4) : SigmaInvolution::standard(4);
    Matrix lhs_stack(0, 0), rhs_stack(0, 0);
    for (std::size_t b = 0; b < 4; ++b) {
        auto [bp, sign] = sigma.on_basis(b);
        Matrix lhs = GaussianRational(Rational(sign)) * km.map(bp);
        Matrix rhs = t_free * km.map(b).conjugate();
        lhs_stack = b == 0 ? lhs : Matrix::vstack(lhs_stack, lhs);
        rhs_stack = b == 0 ? rhs : Matrix::vstack(rhs_stack, rhs);
    }
    auto j0 = solve(lhs_stack, rhs_stack);
    rep.j0_solved = j0.has_value();
    if (!rep.j0_solved) {
        rep.note = "no sigma_0 satisfies the equivariance equations exactly";
        return rep;
    }
    Matrix jj = *j0 * j0->conjugate();
    const Matrix want = split ? Matrix::identity(j0->rows()) : -Matrix::identity(j0->rows());
    rep.j0_square_consistent = jj == want;
    rep.j0 = *j0;
    rep.tau = t_free;
    if (rep.tau_squares_to_identity && rep.j0_square_consistent) {
        QuaternionicStructure qs{*j0, t_free, sigma};
        rep.quaternionic = is_quaternionic(km, qs);
    }
    return rep;
}

}  // namespace kron
