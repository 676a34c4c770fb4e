// Dense exact matrices over the rationals: rank (fraction-free Bareiss),
// reduced row echelon form, nullspace, solve and inverse. Every "equals zero"
// claim in the library bottoms out here, so everything is exact.
#pragma once

#include "bggfe/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bggfe {

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!bggfe::is_zero(x)) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& aik = (*this)(i, k);
                if (bggfe::is_zero(aik)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (!bggfe::is_zero(o(k, j))) r(i, j) += aik * o(k, j);
                }
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Mat operator*(const Rat& s) const {
        Mat r = *this;
        for (auto& x : r.a_) x *= s;
        return r;
    }

    /// columns side by side
    static Mat hcat(const Mat& a, const Mat& b) {
        if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
        Mat r(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
        }
        return r;
    }

    static Mat vcat(const Mat& a, const Mat& b) {
        if (a.cols() != b.cols()) throw std::invalid_argument("vcat column mismatch");
        Mat r(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
        return r;
    }

    static Mat from_columns(const std::vector<std::vector<Rat>>& cols, std::size_t nrows) {
        Mat r(nrows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != nrows) throw std::invalid_argument("from_columns length mismatch");
            for (std::size_t i = 0; i < nrows; ++i) r(i, j) = cols[j][i];
        }
        return r;
    }

    std::vector<Rat> column(std::size_t j) const {
        std::vector<Rat> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

/// Exact rank by fraction-free (Bareiss) elimination. Rows are first cleared
/// of denominators; pivoting picks the largest-magnitude entry in the column.
inline std::size_t rank_bareiss(const Mat& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C));
    for (std::size_t i = 0; i < R; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < C; ++j) l = lcm(l, m(i, j).get_den());
        for (std::size_t j = 0; j < C; ++j) {
            Rat v = m(i, j) * Rat(l);
            v.canonicalize();
            a[i][j] = v.get_num();
        }
    }
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        bool found = false;
        for (std::size_t i = r; i < R; ++i) {
            if (sgn(a[i][c]) != 0 && (!found || mpz_cmpabs(a[i][c].get_mpz_t(), a[piv][c].get_mpz_t()) > 0)) {
                piv = i;
                found = true;
            }
        }
        if (!found) continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j) {
                Int t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

struct Rref {
    Mat m;
    std::vector<std::size_t> pivot_cols;
};

inline Rref rref(Mat m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i)
            if (!is_zero(m(i, c))) {
                piv = i;
                break;
            }
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(m(r, j), m(piv, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < C; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < C; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Mat& m) { return rank_bareiss(m); }

/// Basis of the right kernel, as columns of the returned matrix.
/// m * v = 0 exactly for every column v; count = cols - rank.
inline Mat nullspace(const Mat& m) {
    auto [rr, piv] = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < C; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat basis(C, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(f, k) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) basis(piv[r], k) = -rr(r, f);
    }
    return basis;
}

/// Solve m x = b; throws if inconsistent or underdetermined columns are hit.
inline std::vector<Rat> solve(const Mat& m, const std::vector<Rat>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto [rr, piv] = rref(aug);
    for (auto c : piv)
        if (c == m.cols()) throw std::runtime_error("solve: inconsistent system");
    std::vector<Rat> x(m.cols(), Rat(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = rr(r, m.cols());
    return x;
}

inline Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
    const std::size_t n = m.rows();
    auto [rr, piv] = rref(Mat::hcat(m, Mat::identity(n)));
    if (piv.size() != n || piv.back() != n - 1) throw std::runtime_error("inverse: singular matrix");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr(i, n + j);
    return inv;
}

namespace detail {

/// reduce each row of m against an RREF and report whether all vanish
inline bool rows_in_rowspace(const Mat& m, const Rref& r) {
    const std::size_t C = m.cols();
    if (C != r.m.cols()) throw std::invalid_argument("rows_in_rowspace: width mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Rat> v(C);
        for (std::size_t j = 0; j < C; ++j) v[j] = m(i, j);
        for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
            const Rat& f = v[r.pivot_cols[k]];
            if (is_zero(f)) continue;
            Rat ff = f;  // pivot entries in the RREF are 1
            for (std::size_t j = r.pivot_cols[k]; j < C; ++j)
                if (!is_zero(r.m(k, j))) v[j] -= ff * r.m(k, j);
        }
        for (const auto& x : v)
            if (!is_zero(x)) return false;
    }
    return true;
}

}  // namespace detail

/// span(columns of a) contained in span(columns of b)
inline bool columns_in_span(const Mat& a, const Mat& b) {
    return detail::rows_in_rowspace(a.transpose(), rref(b.transpose()));
}

/// basis-independent column-span equality (equal ranks plus one inclusion)
inline bool same_column_span(const Mat& a, const Mat& b) {
    Rref ra = rref(a.transpose());
    Rref rb = rref(b.transpose());
    if (ra.pivot_cols.size() != rb.pivot_cols.size()) return false;
    return detail::rows_in_rowspace(a.transpose(), rb);
}

}  // namespace bggfe
