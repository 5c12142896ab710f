#pragma once

#include "grcomb/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace grcomb {

/// Smith normal form U*M*V = D with U, V unimodular and the diagonal of D a
/// divisibility chain d1 | d2 | ... of nonnegative integers. `uinv` is U^{-1},
/// kept alongside so that quotient sections stay exact.
struct Snf {
    Mat d, u, v, uinv;
    std::size_t rank = 0;  // number of nonzero diagonal entries
};

namespace detail {

inline void row_swap(Mat& m, std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(i, j), m(k, j));
}

inline void col_swap(Mat& m, std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < m.rows; ++j) std::swap(m(j, i), m(j, k));
}

inline void row_add(Mat& m, std::size_t i, std::size_t k, Int c) {  // row i += c*row k
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) += c * m(k, j);
}

inline void col_add(Mat& m, std::size_t i, std::size_t k, Int c) {  // col i += c*col k
    for (std::size_t j = 0; j < m.rows; ++j) m(j, i) += c * m(j, k);
}

inline void row_neg(Mat& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = -m(i, j);
}

inline void col_neg(Mat& m, std::size_t i) {
    for (std::size_t j = 0; j < m.rows; ++j) m(j, i) = -m(j, i);
}

}  // namespace detail

inline Snf smith_normal_form(const Mat& m) {
    using namespace detail;
    Snf s;
    s.d = m;
    s.u = Mat::identity(m.rows);
    s.uinv = Mat::identity(m.rows);
    s.v = Mat::identity(m.cols);
    Mat& d = s.d;

    auto do_row_swap = [&](std::size_t i, std::size_t k) {
        row_swap(d, i, k);
        row_swap(s.u, i, k);
        col_swap(s.uinv, i, k);
    };
    auto do_row_add = [&](std::size_t i, std::size_t k, Int c) {
        row_add(d, i, k, c);
        row_add(s.u, i, k, c);
        col_add(s.uinv, k, i, -c);  // uinv *= E^{-1}
    };
    auto do_row_neg = [&](std::size_t i) {
        row_neg(d, i);
        row_neg(s.u, i);
        col_neg(s.uinv, i);
    };
    auto do_col_swap = [&](std::size_t i, std::size_t k) {
        col_swap(d, i, k);
        col_swap(s.v, i, k);
    };
    auto do_col_add = [&](std::size_t i, std::size_t k, Int c) {
        col_add(d, i, k, c);
        col_add(s.v, i, k, c);
    };
    auto do_col_neg = [&](std::size_t i) {
        col_neg(d, i);
        col_neg(s.v, i);
    };

    const std::size_t nmin = std::min(d.rows, d.cols);
    std::size_t t = 0;
    while (t < nmin) {
        // locate minimal nonzero |entry| in the lower-right submatrix
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < d.rows; ++i)
            for (std::size_t j = t; j < d.cols; ++j)
                if (d(i, j) != 0 && (best == 0 || std::llabs(d(i, j)) < best)) {
                    best = std::llabs(d(i, j));
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        if (pi != t) do_row_swap(t, pi);
        if (pj != t) do_col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < d.rows; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                do_row_add(i, t, -q);
                if (d(i, t) != 0) {  // remainder smaller than pivot: promote it
                    do_row_swap(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < d.cols; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                do_col_add(j, t, -q);
                if (d(t, j) != 0) {
                    do_col_swap(t, j);
                    clean = false;
                }
            }
        }
        // divisibility fix-up: fold a bad entry into the pivot's row and redo
        bool redo = false;
        for (std::size_t i = t + 1; i < d.rows && !redo; ++i)
            for (std::size_t j = t + 1; j < d.cols && !redo; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    do_row_add(t, i, 1);
                    redo = true;
                }
        if (redo) continue;
        if (d(t, t) < 0) do_row_neg(t);
        ++t;
    }
    s.rank = t;
    return s;
}

/// Basis of the saturated kernel {x : M x = 0}, as columns.
inline std::vector<Vec> integer_kernel(const Mat& m) {
    Snf s = smith_normal_form(m);
    std::vector<Vec> basis;
    for (std::size_t j = s.rank; j < m.cols; ++j) {
        Vec col(m.cols);
        for (std::size_t i = 0; i < m.cols; ++i) col[i] = s.v(i, j);
        basis.push_back(col);
    }
    return basis;
}

/// One integer solution of M x = b, if any.
inline std::optional<Vec> solve_integer(const Mat& m, const Vec& b) {
    if (b.size() != m.rows) throw std::invalid_argument("solve_integer: size mismatch");
    Snf s = smith_normal_form(m);
    Vec ub = s.u.apply(b);
    Vec y(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Int di = (i < std::min(m.rows, m.cols)) ? s.d(i, i) : 0;
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            if (i < m.cols) y[i] = ub[i] / di;
        }
    }
    return s.v.apply(y);
}

/// Does b lie in the column span of M over the integers?
inline bool lattice_contains(const Mat& m, const Vec& b) { return solve_integer(m, b).has_value(); }

/// Matrix whose columns are the given vectors (all of length n).
inline Mat columns_matrix(std::size_t n, const std::vector<Vec>& cols) {
    Mat m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n) throw std::invalid_argument("columns_matrix: ragged input");
        for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

/// Unique rational solution of M x = b when the columns of M are independent.
inline std::optional<QVec> solve_rational(const Mat& m, const QVec& b) {
    // Gaussian elimination over Q on the augmented matrix.
    std::size_t rows = m.rows, cols = m.cols;
    std::vector<QVec> a(rows, QVec(cols + 1, Rat(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rat(m(i, j));
        a[i][cols] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == Rat(0)) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = Rat(1) / a[r][c];
        for (std::size_t j = c; j <= cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == Rat(0)) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != Rat(0)) return std::nullopt;
    QVec x(cols, Rat(0));
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = a[k][cols];
    return x;
}

}  // namespace grcomb
