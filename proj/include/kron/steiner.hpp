#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kron/binary_form.hpp"
#include "kron/matrix.hpp"

namespace kron {

// Presentation of a sheaf on P^1 as the cokernel of a map between sums of
// line bundles:  0 -> (+) O(e_j) -> (+) O(f_i) -> N -> 0.
// Entry (i, j) of the matrix is a form of degree f_i - e_j (or zero).
class SteinerResolution {
  public:
    SteinerResolution(std::vector<long> source_twists, std::vector<long> target_twists,
                      std::vector<std::vector<BinaryForm>> matrix)
        : e_(std::move(source_twists)), f_(std::move(target_twists)), m_(std::move(matrix)) {
        if (f_.size() <= e_.size())
            throw std::invalid_argument("resolution needs more targets than sources");
        if (m_.size() != f_.size()) throw std::invalid_argument("matrix row count != target count");
        for (std::size_t i = 0; i < m_.size(); ++i) {
            if (m_[i].size() != e_.size())
                throw std::invalid_argument("matrix column count != source count");
            for (std::size_t j = 0; j < e_.size(); ++j) {
                const long want = f_[i] - e_[j];
                if (m_[i][j].is_zero()) {
                    m_[i][j] = BinaryForm::zero(want >= 0 ? want : 0);  // canonical zero entry
                } else if (m_[i][j].degree() != want) {
                    throw std::invalid_argument("entry degree inconsistent with twists");
                }
            }
        }
    }

    const std::vector<long>& source_twists() const { return e_; }
    const std::vector<long>& target_twists() const { return f_; }
    const BinaryForm& entry(std::size_t i, std::size_t j) const { return m_[i][j]; }
    std::size_t sources() const { return e_.size(); }
    std::size_t targets() const { return f_.size(); }
    long cokernel_rank() const { return static_cast<long>(f_.size() - e_.size()); }
    long total_degree() const {
        long t = 0;
        for (long v : f_) t += v;
        for (long v : e_) t -= v;
        return t;
    }

    std::uint64_t content_hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](const std::string& s) {
            for (unsigned char c : s) {
                h ^= c;
                h *= 1099511628211ULL;
            }
            h ^= 0xff;
            h *= 1099511628211ULL;
        };
        for (long v : e_) mix(std::to_string(v));
        for (long v : f_) mix(std::to_string(v));
        for (const auto& row : m_)
            for (const auto& x : row) {
                mix(std::to_string(x.degree()));
                for (const auto& c : x.coeffs()) mix(scalar_to_string(c));
            }
        return h;
    }

  private:
    std::vector<long> e_;
    std::vector<long> f_;
    std::vector<std::vector<BinaryForm>> m_;
};

namespace detail {

inline std::vector<BinaryForm> maximal_minors(const SteinerResolution& r) {
    const std::size_t m = r.targets(), s = r.sources();
    std::vector<BinaryForm> out;
    if (s == 0) {
        out.push_back(BinaryForm::constant(GaussianRational(1)));
        return out;
    }
    // row subsets of size s in lexicographic order
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
        std::vector<std::vector<BinaryForm>> sub(s);
        for (std::size_t i = 0; i < s; ++i) {
            sub[i].reserve(s);
            for (std::size_t j = 0; j < s; ++j) sub[i].push_back(r.entry(idx[i], j));
        }
        BinaryForm d = form_det(sub);
        if (!d.is_zero()) out.push_back(d);
        std::size_t k = s;
        while (k > 0 && idx[k - 1] == m - s + (k - 1)) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t t = k; t < s; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
}

}  // namespace detail

struct ResolutionDiagnostics {
    bool generically_injective = false;
    bool cokernel_locally_free = false;
    BinaryForm witness;  // gcd of the maximal minors (monic), zero if none survive
};

inline ResolutionDiagnostics validate_resolution(const SteinerResolution& r) {
    ResolutionDiagnostics d;
    std::vector<BinaryForm> minors = detail::maximal_minors(r);
    if (minors.empty()) {
        d.witness = BinaryForm::zero(0);
        return d;  // every maximal minor vanishes
    }
    d.generically_injective = true;
    BinaryForm g = minors[0];
    for (std::size_t i = 1; i < minors.size(); ++i) g = form_gcd(g, minors[i]);
    d.witness = g.monic();
    d.cokernel_locally_free = d.witness.is_nonzero_constant();
    return d;
}

namespace detail {

inline long h0_line(long m) { return m >= 0 ? m + 1 : 0; }
inline long h1_line(long m) { return m <= -2 ? -m - 1 : 0; }

// Connecting map at twist k, realized by Serre duality as the multiplication
// pairing (+)_i H0(O(-f_i-k-2)) -> (+)_j H0(O(-e_j-k-2)) built from the
// matrix entries; only its rank is ever used.
inline std::size_t connecting_rank(const SteinerResolution& r, long k) {
    const auto& e = r.source_twists();
    const auto& f = r.target_twists();
    std::vector<long> col_deg(f.size()), row_deg(e.size());
    long cols = 0, rows = 0;
    std::vector<long> col_off(f.size()), row_off(e.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        col_deg[i] = -f[i] - k - 2;
        col_off[i] = cols;
        cols += h0_line(col_deg[i]);
    }
    for (std::size_t j = 0; j < e.size(); ++j) {
        row_deg[j] = -e[j] - k - 2;
        row_off[j] = rows;
        rows += h0_line(row_deg[j]);
    }
    if (rows == 0 || cols == 0) return 0;
    Matrix mult(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (col_deg[i] < 0) continue;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (row_deg[j] < 0) continue;
            const BinaryForm& a = r.entry(i, j);
            if (a.is_zero()) continue;
            // x0^(c-t) x1^t  *  a  contributes a.coeff(t'-t) to basis index t'
            for (long t = 0; t <= col_deg[i]; ++t)
                for (long dt = 0; dt <= a.degree(); ++dt) {
                    long tp = t + dt;
                    if (tp > row_deg[j]) break;
                    if (a.coeff(dt).is_zero()) continue;
                    mult.at(static_cast<std::size_t>(row_off[j] + tp),
                            static_cast<std::size_t>(col_off[i] + t)) = a.coeff(dt);
                }
        }
    }
    return rank(mult);
}

inline void require_locally_free(const SteinerResolution& r) {
    ResolutionDiagnostics d = validate_resolution(r);
    if (!d.generically_injective || !d.cokernel_locally_free)
        throw std::invalid_argument("resolution does not present a locally free cokernel (witness " +
                                    d.witness.to_string() + ")");
}

}  // namespace detail

// h^0(N(k)) and h^1(N(k)) for the cokernel sheaf N, from the long exact
// sequence plus exact Serre duality -- no limits anywhere.
inline std::pair<long, long> cohomology_at(const SteinerResolution& r, long k) {
    static std::mutex mu;
    static std::unordered_map<std::uint64_t, std::map<long, std::pair<long, long>>> cache;
    const std::uint64_t key = r.content_hash();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            auto jt = it->second.find(k);
            if (jt != it->second.end()) return jt->second;
        }
    }
    long h0A = 0, h1A = 0, h0B = 0, h1B = 0;
    for (long ej : r.source_twists()) {
        h0A += detail::h0_line(ej + k);
        h1A += detail::h1_line(ej + k);
    }
    for (long fi : r.target_twists()) {
        h0B += detail::h0_line(fi + k);
        h1B += detail::h1_line(fi + k);
    }
    const long delta = (h1A > 0 && h1B >= 0) ? static_cast<long>(detail::connecting_rank(r, k)) : 0;
    const long h0 = (h0B - h0A) + (h1A - delta);
    const long h1 = h1B - delta;
    {
        std::lock_guard<std::mutex> lock(mu);
        cache[key][k] = {h0, h1};
    }
    return {h0, h1};
}

inline long h0_twist(const SteinerResolution& r, long k) {
    detail::require_locally_free(r);
    return cohomology_at(r, k).first;
}
inline long h1_twist(const SteinerResolution& r, long k) {
    detail::require_locally_free(r);
    return cohomology_at(r, k).second;
}

struct CohomologyTable {
    long k_min = 0;
    long k_max = 0;
    std::vector<std::pair<long, long>> values;  // (h0, h1) for k = k_min..k_max

    std::pair<long, long> at(long k) const {
        return values.at(static_cast<std::size_t>(k - k_min));
    }
};

// Default query window from the twist data; wide enough for every table use.
inline CohomologyTable cohomology_table(const SteinerResolution& r, std::optional<long> lo = std::nullopt,
                                        std::optional<long> hi = std::nullopt) {
    detail::require_locally_free(r);
    long max_f = r.target_twists()[0];
    for (long v : r.target_twists()) max_f = std::max(max_f, v);
    CohomologyTable t;
    t.k_min = lo.value_or(-(max_f + r.cokernel_rank() + 2));
    t.k_max = hi.value_or(2);
    if (t.k_min > t.k_max) throw std::invalid_argument("empty twist range");
    for (long k = t.k_min; k <= t.k_max; ++k) t.values.push_back(cohomology_at(r, k));
    return t;
}

// Splitting type of the locally free cokernel: the multiset {d_l} with
// N = (+) O(d_l), recovered from h0 jumps.  #{l : d_l >= -k} = h0(k)-h0(k-1),
// and every d_l >= min f_i, so the scan below terminates with all summands
// accounted for.
inline std::vector<long> splitting_type(const SteinerResolution& r) {
    detail::require_locally_free(r);
    const long rank_n = r.cokernel_rank();
    if (rank_n == 0) return {};
    long min_f = r.target_twists()[0];
    for (long v : r.target_twists()) min_f = std::min(min_f, v);

    const long k_hi = -min_f;
    std::map<long, long> h0s;
    auto h0_at = [&](long k) {
        auto it = h0s.find(k);
        if (it != h0s.end()) return it->second;
        long v = cohomology_at(r, k).first;
        h0s[k] = v;
        return v;
    };

    std::vector<long> degrees;
    long prev_count = rank_n;  // #{d_l >= -k} at k = k_hi
    {
        const long jump = h0_at(k_hi) - h0_at(k_hi - 1);
        if (jump != rank_n)
            throw std::logic_error("splitting scan: top count mismatch (corrupt resolution?)");
    }
    long k = k_hi;
    long guard = 0;
    const long guard_limit = 4 * (std::abs(r.total_degree()) + std::abs(min_f) * rank_n + rank_n + 4);
    while (prev_count > 0) {
        --k;
        if (++guard > guard_limit) throw std::logic_error("splitting scan failed to terminate");
        const long count = h0_at(k) == 0 ? 0 : h0_at(k) - h0_at(k - 1);
        if (count > prev_count || count < 0)
            throw std::logic_error("splitting scan: non-monotone section counts");
        for (long c = 0; c < prev_count - count; ++c) degrees.push_back(-k - 1);
        prev_count = count;
    }
    std::sort(degrees.begin(), degrees.end());
    long total = 0;
    for (long d : degrees) total += d;
    if (total != r.total_degree() || static_cast<long>(degrees.size()) != rank_n)
        throw std::logic_error("splitting scan: degree bookkeeping failed");
    return degrees;
}

enum class RecursionVariant { corrected, printed };

// Splitting multiset of the restriction of a globally generated bundle to a
// generic line, from the list h0[i] = dim H^0(N(-i)).  The corrected
// recursion uses the weight (j - i + 1) on known higher summands; the
// printed variant (weight i + 1, kept for the self-test report) is exposed
// but fails its own consistency checks on standard inputs.
// the bare top-down recursion, without consistency checks; used directly when
// reporting what the uncorrected variant produces
inline std::vector<long> splitting_recursion_raw(const std::vector<long>& h0_list,
                                                 RecursionVariant variant) {
    std::vector<long> h0 = h0_list;
    while (!h0.empty() && h0.back() == 0) h0.pop_back();
    std::vector<long> r(h0.size(), 0);
    for (std::size_t ii = h0.size(); ii-- > 0;) {
        const long i = static_cast<long>(ii);
        long acc = 0;
        for (std::size_t jj = ii + 1; jj < h0.size(); ++jj) {
            const long j = static_cast<long>(jj);
            const long weight = variant == RecursionVariant::corrected ? (j - i + 1) : (i + 1);
            acc += weight * r[jj];
        }
        r[ii] = h0[ii] - acc;
    }
    return r;
}

inline std::map<long, long> generic_section_splitting(const std::vector<long>& h0_list, long rank_n,
                                                      RecursionVariant variant = RecursionVariant::corrected) {
    std::vector<long> h0 = h0_list;
    while (!h0.empty() && h0.back() == 0) h0.pop_back();
    for (long v : h0)
        if (v <= 0) throw std::invalid_argument("h0 list must be positive until its first zero");
    std::vector<long> r = splitting_recursion_raw(h0, variant);
    for (std::size_t ii = 0; ii < r.size(); ++ii)
        if (r[ii] < 0)
            throw std::domain_error("inconsistent h0 list: negative multiplicity at degree " +
                                    std::to_string(ii));
    long total = 0;
    for (long v : r) total += v;
    if (total != rank_n)
        throw std::domain_error("inconsistent h0 list: multiplicities sum to " + std::to_string(total) +
                                ", expected rank " + std::to_string(rank_n));
    for (std::size_t ii = 0; ii < h0.size(); ++ii) {
        long acc = 0;
        for (std::size_t jj = ii; jj < h0.size(); ++jj)
            acc += (static_cast<long>(jj) - static_cast<long>(ii) + 1) * r[jj];
        if (acc != h0[ii])
            throw std::domain_error("inconsistent h0 list: re-evaluation mismatch at index " +
                                    std::to_string(ii));
    }
    std::map<long, long> out;
    for (std::size_t ii = 0; ii < r.size(); ++ii)
        if (r[ii] > 0) out[static_cast<long>(ii)] = r[ii];
    return out;
}

}  // namespace kron
