#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kron/rational.hpp"

namespace kron {

using Vector = std::vector<GaussianRational>;

// Dense matrix over Q(i).  Values are immutable in spirit: operations return
// new matrices and never mutate shared state.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<GaussianRational>>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix column(const std::vector<GaussianRational>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianRational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }
    Matrix conjugate() const {
        Matrix c(rows_, cols_);
        for (std::size_t i = 0; i < rows_ * cols_; ++i) c.a_[i] = a_[i].conj();
        return c;
    }

    Matrix operator-() const {
        Matrix c(rows_, cols_);
        for (std::size_t i = 0; i < rows_ * cols_; ++i) c.a_[i] = -a_[i];
        return c;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        x.check_same_shape(y);
        Matrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        x.check_same_shape(y);
        Matrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    if (y.at(k, j).is_zero()) continue;
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
                }
            }
        return r;
    }
    friend Matrix operator*(const GaussianRational& s, const Matrix& x) {
        Matrix r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = s * x.a_[i];
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::vector<GaussianRational> row_vec(std::size_t i) const {
        std::vector<GaussianRational> v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }
    std::vector<GaussianRational> col_vec(std::size_t j) const {
        std::vector<GaussianRational> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    // apply to a vector
    std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("apply: length mismatch");
        std::vector<GaussianRational> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    static Matrix hstack(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_) throw std::invalid_argument("hstack: row mismatch");
        Matrix r(x.rows_, x.cols_ + y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t j = 0; j < x.cols_; ++j) r.at(i, j) = x.at(i, j);
            for (std::size_t j = 0; j < y.cols_; ++j) r.at(i, x.cols_ + j) = y.at(i, j);
        }
        return r;
    }
    static Matrix vstack(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.cols_) throw std::invalid_argument("vstack: col mismatch");
        Matrix r(x.rows_ + y.rows_, x.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j) r.at(i, j) = x.at(i, j);
        for (std::size_t i = 0; i < y.rows_; ++i)
            for (std::size_t j = 0; j < x.cols_; ++j) r.at(x.rows_ + i, j) = y.at(i, j);
        return r;
    }

  private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<GaussianRational> a_;
};

namespace detail {

// Clear denominators row by row (row scaling changes neither rank nor the
// right kernel), leaving Gaussian-integer entries for fraction-free steps.
inline Matrix cleared_rows(const Matrix& m) {
    Matrix r = m;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        mpz_class l(1);
        for (std::size_t j = 0; j < r.cols(); ++j) {
            l = lcm(l, r.at(i, j).re.get_den());
            l = lcm(l, r.at(i, j).im.get_den());
        }
        if (l != 1) {
            GaussianRational s((Rational(l)));
            for (std::size_t j = 0; j < r.cols(); ++j) r.at(i, j) = s * r.at(i, j);
        }
    }
    return r;
}

}  // namespace detail

// Fraction-free (Bareiss) elimination with deterministic pivoting: columns in
// order, pivot = first nonzero entry below the current row.  Returns the pivot
// columns; `work` ends in echelon form.
inline std::vector<std::size_t> bareiss_echelon(Matrix& work) {
    std::vector<std::size_t> pivots;
    const std::size_t m = work.rows(), n = work.cols();
    GaussianRational prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = m;
        for (std::size_t i = r; i < m; ++i)
            if (!work.at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p == m) continue;
        if (p != r)
            for (std::size_t j = 0; j < n; ++j) std::swap(work.at(r, j), work.at(p, j));
        const GaussianRational piv = work.at(r, c);
        for (std::size_t i = r + 1; i < m; ++i) {
            const GaussianRational f = work.at(i, c);
            for (std::size_t j = c; j < n; ++j) {
                work.at(i, j) = (piv * work.at(i, j) - f * work.at(r, j)) / prev;
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Matrix work = detail::cleared_rows(m);
    return bareiss_echelon(work).size();
}

struct Rref {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form over the field, derived from the fraction-free
// echelon by back substitution.
inline Rref rref(const Matrix& m) {
    Matrix work = detail::cleared_rows(m);
    std::vector<std::size_t> pivots = bareiss_echelon(work);
    for (std::size_t k = pivots.size(); k-- > 0;) {
        const std::size_t c = pivots[k];
        GaussianRational inv = work.at(k, c).inverse();
        for (std::size_t j = c; j < work.cols(); ++j) work.at(k, j) = inv * work.at(k, j);
        for (std::size_t i = 0; i < k; ++i) {
            const GaussianRational f = work.at(i, c);
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < work.cols(); ++j)
                work.at(i, j) = work.at(i, j) - f * work.at(k, j);
        }
    }
    return {std::move(work), std::move(pivots)};
}

// Right-kernel basis in the canonical form read off the reduced echelon form:
// one vector per free column, with 1 in the free position.
inline std::vector<std::vector<GaussianRational>> kernel_basis(const Matrix& m) {
    Rref r = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<GaussianRational> v(n);
        v[f] = GaussianRational(1);
        for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
            v[r.pivot_cols[k]] = -r.reduced.at(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve A X = B exactly; nullopt when inconsistent.  Free variables are set
// to zero, which makes the answer deterministic.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    Rref r = rref(Matrix::hstack(a, b));
    const std::size_t n = a.cols();
    Matrix x(n, b.cols());
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
        if (r.pivot_cols[k] >= n) return std::nullopt;  // pivot in the RHS block
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(r.pivot_cols[k], j) = r.reduced.at(k, n + j);
    }
    return x;
}

inline GaussianRational determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return GaussianRational(1);
    Matrix work = m;
    GaussianRational scale(1);  // accumulated row-swap sign
    GaussianRational prev(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t i = c; i < n; ++i)
            if (!work.at(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p == n) return GaussianRational(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(work.at(c, j), work.at(p, j));
            scale = -scale;
        }
        const GaussianRational piv = work.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            const GaussianRational f = work.at(i, c);
            for (std::size_t j = c; j < n; ++j)
                work.at(i, j) = (piv * work.at(i, j) - f * work.at(c, j)) / prev;
        }
        prev = piv;
    }
    return scale * work.at(n - 1, n - 1);
}

struct Inertia {
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t nullity = 0;
};

// Sylvester inertia of a real symmetric matrix by exact symmetric reduction.
inline Inertia signature(const Matrix& s) {
    const std::size_t n = s.rows();
    if (s.cols() != n) throw std::invalid_argument("signature: non-square input");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (s.at(i, j).im != 0) throw std::invalid_argument("signature: non-real input");
            if (!(s.at(i, j) == s.at(j, i))) throw std::invalid_argument("signature: non-symmetric input");
        }
    // dense working copy of the real parts
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = s.at(i, j).re;

    Inertia out;
    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = i;

    while (!live.empty()) {
        // first nonzero diagonal entry among the live block
        std::size_t dpos = live.size();
        for (std::size_t i = 0; i < live.size(); ++i)
            if (a[live[i]][live[i]] != 0) {
                dpos = i;
                break;
            }
        if (dpos == live.size()) {
            // no diagonal pivot: look for an off-diagonal entry and fold it in
            std::size_t bi = live.size(), bj = live.size();
            for (std::size_t i = 0; i < live.size() && bi == live.size(); ++i)
                for (std::size_t j = i + 1; j < live.size(); ++j)
                    if (a[live[i]][live[j]] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi == live.size()) {
                out.nullity += live.size();  // zero block
                break;
            }
            // congruence: row/col bi += row/col bj turns the zero diagonal
            // entry into 2*a[bi][bj]
            const std::size_t p = live[bi], q = live[bj];
            for (std::size_t j = 0; j < n; ++j) a[p][j] += a[q][j];
            for (std::size_t i = 0; i < n; ++i) a[i][p] += a[i][q];
            dpos = bi;
        }
        const std::size_t p = live[dpos];
        const Rational piv = a[p][p];
        if (piv > 0)
            ++out.positives;
        else
            ++out.negatives;
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(dpos));
        // complete every row update against the untouched pivot row before
        // clearing the pivot row and column
        for (std::size_t ii : live) {
            if (a[ii][p] == 0) continue;
            const Rational f = a[ii][p] / piv;
            for (std::size_t jj : live) a[ii][jj] -= f * a[p][jj];
        }
        for (std::size_t ii : live) {
            a[ii][p] = 0;
            a[p][ii] = 0;
        }
    }
    return out;
}

}  // namespace kron
