#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kron/binary_form.hpp"
#include "kron/matrix.hpp"
#include "kron/rng.hpp"

namespace kron {

// r-Kronecker module: a linear map V0 (x) C^r -> V1 stored as r matrices of
// shape n x k, acting by alpha(v (x) z) = sum_i z_i A_i v.
class KroneckerModule {
  public:
    KroneckerModule(std::size_t k, std::size_t n, std::vector<Matrix> maps)
        : k_(k), n_(n), maps_(std::move(maps)) {
        if (maps_.empty()) throw std::invalid_argument("KroneckerModule: need r >= 1 maps");
        for (const Matrix& a : maps_)
            if (a.rows() != n_ || a.cols() != k_)
                throw std::invalid_argument("KroneckerModule: map shape mismatch");
    }

    std::size_t r() const { return maps_.size(); }
    std::size_t dim_v0() const { return k_; }
    std::size_t dim_v1() const { return n_; }
    const Matrix& map(std::size_t i) const { return maps_[i]; }

    Matrix slice_matrix(const Vector& z) const {
        if (z.size() != r()) throw std::invalid_argument("slice: z length != r");
        Matrix s(n_, k_);
        for (std::size_t i = 0; i < maps_.size(); ++i) {
            if (z[i].is_zero()) continue;
            s = s + z[i] * maps_[i];
        }
        return s;
    }

    Vector evaluate(const Vector& v, const Vector& z) const {
        if (v.size() != k_) throw std::invalid_argument("evaluate: v length != k");
        return slice_matrix(z).apply(v);
    }

    std::size_t slice_rank(const Vector& z) const {
        bool all_zero = true;
        for (const auto& c : z) all_zero = all_zero && c.is_zero();
        if (all_zero) throw std::invalid_argument("slice_rank: z = 0");
        return rank(slice_matrix(z));
    }

    // restriction to the span of independent vectors W (each of length r),
    // giving an r'-Kronecker module with maps B_j = sum_i W_j[i] A_i
    KroneckerModule restrict(const std::vector<Vector>& w) const {
        if (w.empty() || w.size() > r()) throw std::invalid_argument("restrict: bad subspace size");
        Matrix wm(w.size(), r());
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j].size() != r()) throw std::invalid_argument("restrict: vector length != r");
            for (std::size_t i = 0; i < r(); ++i) wm.at(j, i) = w[j][i];
        }
        if (rank(wm) != w.size()) throw std::invalid_argument("restrict: dependent vectors");
        std::vector<Matrix> maps;
        maps.reserve(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) maps.push_back(slice_matrix(w[j]));
        return KroneckerModule(k_, n_, std::move(maps));
    }

  private:
    std::size_t k_, n_;
    std::vector<Matrix> maps_;
};

// The involution sigma on C^(2s) acting pairwise:
//   sigma(z)_(2t)   = sign_t * conj(z_(2t+1))
//   sigma(z)_(2t+1) =          conj(z_(2t))
// All signs -1 is the standard quaternionic involution (sigma^2 = -1 on every
// pair); all +1 is the split form (sigma^2 = +1); mixed masks are allowed.
struct SigmaInvolution {
    std::vector<int> pair_signs;

    static SigmaInvolution standard(std::size_t r) {
        if (r % 2 != 0) throw std::invalid_argument("sigma needs even r");
        return {std::vector<int>(r / 2, -1)};
    }
    static SigmaInvolution split(std::size_t r) {
        if (r % 2 != 0) throw std::invalid_argument("sigma needs even r");
        return {std::vector<int>(r / 2, +1)};
    }

    std::size_t r() const { return 2 * pair_signs.size(); }

    Vector apply(const Vector& z) const {
        if (z.size() != r()) throw std::invalid_argument("sigma: length mismatch");
        Vector out(z.size());
        for (std::size_t t = 0; t < pair_signs.size(); ++t) {
            const GaussianRational s{Rational(pair_signs[t])};
            out[2 * t] = s * z[2 * t + 1].conj();
            out[2 * t + 1] = z[2 * t].conj();
        }
        return out;
    }

    // sigma(e_b) = sign * e_(partner(b)) on basis vectors
    std::pair<std::size_t, int> on_basis(std::size_t b) const {
        const std::size_t t = b / 2;
        if (b % 2 == 0) return {b + 1, 1};         // e_(2t) -> e_(2t+1)
        return {b - 1, pair_signs[t]};             // e_(2t+1) -> sign * e_(2t)
    }
};

// sigma_0 on V0 and tau on V1, both acting conjugate-linearly, v -> M conj(v).
// tau is a real structure (T conj(T) = I).  sigma_0 squares to -1 for the
// standard involution and to +1 for the split one: applying the module
// identity twice forces sigma_0^2 = sigma^2.
struct QuaternionicStructure {
    Matrix j0;
    Matrix t;
    SigmaInvolution sigma;

    // -1 all-standard, +1 all-split, 0 mixed mask (either square accepted)
    int expected_square() const {
        bool all_minus = true, all_plus = true;
        for (int s : sigma.pair_signs) (s < 0 ? all_plus : all_minus) = false;
        if (all_minus) return -1;
        if (all_plus) return +1;
        return 0;
    }

    bool structure_identities_hold() const {
        if (j0.rows() != j0.cols() || t.rows() != t.cols()) return false;
        if (j0.rows() % 2 != 0) return false;  // quaternionic structures need even dimension
        Matrix tt = t * t.conjugate();
        if (!(tt == Matrix::identity(t.rows()))) return false;
        Matrix jj = j0 * j0.conjugate();
        const int want = expected_square();
        if (want <= 0 && jj == -Matrix::identity(j0.rows())) return true;
        if (want >= 0 && jj == Matrix::identity(j0.rows())) return true;
        return false;
    }
};

// Exact check of alpha(sigma0(v) (x) sigma(z)) = tau(alpha(v (x) z)) on a
// basis; both sides are conjugate-bilinear, so the basis check decides the
// identity everywhere.
inline bool is_quaternionic(const KroneckerModule& km, const QuaternionicStructure& qs) {
    if (km.r() % 2 != 0) throw std::invalid_argument("is_quaternionic: odd r");
    if (qs.sigma.r() != km.r()) throw std::invalid_argument("is_quaternionic: sigma size mismatch");
    if (qs.j0.rows() != km.dim_v0() || qs.t.rows() != km.dim_v1())
        throw std::invalid_argument("is_quaternionic: structure dimensions mismatch");
    if (!qs.structure_identities_hold()) return false;
    for (std::size_t b = 0; b < km.r(); ++b) {
        auto [bp, sign] = qs.sigma.on_basis(b);
        // on v = e_a for all a at once: sign * A_(b') J0 == T conj(A_b)
        Matrix lhs = GaussianRational(Rational(sign)) * (km.map(bp) * qs.j0);
        Matrix rhs = qs.t * km.map(b).conjugate();
        if (!(lhs == rhs)) return false;
    }
    return true;
}

enum class SliceVerdict { exact_pass, exact_fail, randomized_pass, randomized_fail };

struct SliceCertificate {
    SliceVerdict verdict;
    std::optional<Vector> witness;          // a z with deficient slice rank, when found
    std::optional<BinaryForm> pencil_gcd;   // r = 2 only: gcd of k x k pencil minors
    long trials = 0;

    bool passed() const {
        return verdict == SliceVerdict::exact_pass || verdict == SliceVerdict::randomized_pass;
    }
    bool exact() const {
        return verdict == SliceVerdict::exact_pass || verdict == SliceVerdict::exact_fail;
    }
};

namespace detail {

// hunt for an explicit bad slice of a pencil whose minor gcd is nonconstant;
// roots can live outside Q(i), so this may come back empty
inline std::optional<Vector> pencil_witness(const KroneckerModule& km, const BinaryForm& g) {
    std::vector<Vector> candidates;
    candidates.push_back({GaussianRational(0), GaussianRational(1)});
    candidates.push_back({GaussianRational(1), GaussianRational(0)});
    for (long a = -12; a <= 12; ++a)
        for (long b = -2; b <= 2; ++b)
            candidates.push_back({GaussianRational(1), GaussianRational(Rational(a), Rational(b))});
    for (const Vector& z : candidates) {
        if (!g.is_zero() && !g.evaluate(z[0], z[1]).is_zero()) continue;
        if (km.slice_rank(z) < km.dim_v0()) return z;
    }
    return std::nullopt;
}

}  // namespace detail

// Injectivity of every slice.  Decided exactly for r <= 2 (the k x k minors
// of the pencil are binary forms, and their gcd is constant iff no slice
// drops rank); sampled with an explicit trial count for r >= 3, where the
// common vanishing locus in P^(r-1) is not decided.
inline SliceCertificate slice_injectivity_certificate(const KroneckerModule& km, std::uint64_t seed = 0,
                                                      long trials = 32) {
    const std::size_t k = km.dim_v0();
    if (km.r() == 1) {
        SliceCertificate c;
        const bool full = rank(km.map(0)) == k;
        c.verdict = full ? SliceVerdict::exact_pass : SliceVerdict::exact_fail;
        if (!full) c.witness = Vector{GaussianRational(1)};
        return c;
    }
    if (km.r() == 2) {
        SliceCertificate c;
        // minors of z0 A1 + z1 A2 as forms in (z0, z1)
        const std::size_t n = km.dim_v1();
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        std::optional<BinaryForm> g;
        if (k == 0 || n < k) {
            c.verdict = n < k ? SliceVerdict::exact_fail : SliceVerdict::exact_pass;
            return c;
        }
        while (true) {
            std::vector<std::vector<BinaryForm>> sub(k, std::vector<BinaryForm>());
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    sub[i].push_back(BinaryForm::linear(km.map(0).at(idx[i], j), km.map(1).at(idx[i], j)));
            BinaryForm d = form_det(sub);
            if (!d.is_zero()) g = g ? form_gcd(*g, d) : d.monic();
            if (g && g->is_nonzero_constant()) break;  // gcd can only shrink
            std::size_t t = k;
            while (t > 0 && idx[t - 1] == n - k + (t - 1)) --t;
            if (t == 0) break;
            ++idx[t - 1];
            for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
        }
        c.pencil_gcd = g ? *g : BinaryForm::zero(0);
        const bool pass = g && g->is_nonzero_constant() &&
                          km.slice_rank({GaussianRational(0), GaussianRational(1)}) == k;
        c.verdict = pass ? SliceVerdict::exact_pass : SliceVerdict::exact_fail;
        if (!pass) c.witness = detail::pencil_witness(km, *c.pencil_gcd);
        return c;
    }
    SliceCertificate c;
    c.trials = trials;
    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        Vector z(km.r());
        bool nonzero = false;
        for (auto& v : z) {
            v = GaussianRational(Rational(rng.uniform(-1000, 1000)));
            nonzero = nonzero || !v.is_zero();
        }
        if (!nonzero) {
            --t;
            continue;
        }
        if (km.slice_rank(z) < k) {
            c.verdict = SliceVerdict::randomized_fail;
            c.witness = z;
            return c;
        }
    }
    c.verdict = SliceVerdict::randomized_pass;
    return c;
}

}  // namespace kron
