#pragma once

#include "mfk/rational.hpp"
#include "mfk/zpoly.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace mfk {

/// Sparse row over Q: sorted (column, value) pairs, values nonzero.
using SparseRow = std::vector<std::pair<int, Rat>>;

inline void row_axpy(SparseRow& target, const Rat& factor, const SparseRow& src) {
    if (factor == 0) return;
    SparseRow out;
    out.reserve(target.size() + src.size());
    size_t i = 0, j = 0;
    while (i < target.size() || j < src.size()) {
        if (j >= src.size() || (i < target.size() && target[i].first < src[j].first)) {
            out.push_back(target[i++]);
        } else if (i >= target.size() || src[j].first < target[i].first) {
            Rat v = factor * src[j].second;
            if (v != 0) out.emplace_back(src[j].first, std::move(v));
            ++j;
        } else {
            Rat v = target[i].second + factor * src[j].second;
            if (v != 0) out.emplace_back(target[i].first, std::move(v));
            ++i, ++j;
        }
    }
    target = std::move(out);
}

/// Row-echelon structure of a sparse rational matrix with a fixed number of
/// columns. Rows are fully reduced (RREF): each pivot column is cleared in
/// all other rows and pivots are scaled to 1.
class SparseRref {
  public:
    explicit SparseRref(int ncols) : ncols_(ncols), pivot_row_of_col_(ncols, -1) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseRow>& rows() const { return rows_; }
    const std::vector<int>& pivot_cols() const { return pivot_cols_; }
    bool is_pivot_col(int c) const { return pivot_row_of_col_[c] >= 0; }

    /// Reduces `row` against the current basis in place.
    void reduce(SparseRow& row) const {
        for (size_t k = 0; k < row.size();) {
            int pr = pivot_row_of_col_[row[k].first];
            if (pr < 0) {
                ++k;
                continue;
            }
            Rat f = -row[k].second;
            row_axpy(row, f, rows_[static_cast<size_t>(pr)]);
            // row[k] eliminated; positions before k are untouched (their
            // columns precede the pivot and rows_[pr] starts at the pivot).
        }
    }

    /// Reduces and, if nonzero, inserts the row. Returns true if the rank grew.
    bool add_row(SparseRow row) {
        reduce(row);
        if (row.empty()) return false;
        Rat inv = Rat(1) / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        int pcol = row.front().first;
        // clear this column from existing rows
        for (size_t r = 0; r < rows_.size(); ++r) {
            auto& other = rows_[r];
            auto it = std::lower_bound(other.begin(), other.end(), pcol,
                                       [](const auto& p, int c) { return p.first < c; });
            if (it != other.end() && it->first == pcol) {
                Rat f = -it->second;
                row_axpy(other, f, row);
            }
        }
        pivot_row_of_col_[pcol] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        pivot_cols_.push_back(pcol);
        return true;
    }

    /// Basis of the nullspace of the matrix formed by the added rows, one
    /// sparse column vector per free column, in column order. Free variable
    /// is set to 1.
    std::vector<SparseRow> nullspace() const {
        std::vector<SparseRow> basis;
        for (int c = 0; c < ncols_; ++c) {
            if (is_pivot_col(c)) continue;
            SparseRow v;
            v.emplace_back(c, Rat(1));
            for (size_t r = 0; r < rows_.size(); ++r) {
                const auto& row = rows_[r];
                auto it = std::lower_bound(row.begin(), row.end(), c,
                                           [](const auto& p, int cc) { return p.first < cc; });
                if (it != row.end() && it->first == c)
                    v.emplace_back(pivot_cols_[r], -it->second);
            }
            std::sort(v.begin(), v.end());
            basis.push_back(std::move(v));
        }
        return basis;
    }

  private:
    int ncols_;
    std::vector<SparseRow> rows_;
    std::vector<int> pivot_cols_;
    std::vector<int> pivot_row_of_col_;
};

/// Dense matrix over Q.
struct QMat {
    int n = 0, m = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols, Rat(0)) {}
    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }

    static QMat identity(int k) {
        QMat r(k, k);
        for (int i = 0; i < k; ++i) r.at(i, i) = 1;
        return r;
    }
    bool operator==(const QMat& o) const { return n == o.n && m == o.m && a == o.a; }

    QMat transpose() const {
        QMat r(m, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    friend QMat operator*(const QMat& x, const QMat& y) {
        if (x.m != y.n) throw MfkError("Internal", "matrix size mismatch");
        QMat r(x.n, y.m);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.m; ++k) {
                const Rat& v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.m; ++j)
                    if (y.at(k, j) != 0) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend QMat operator-(const QMat& x) {
        QMat r = x;
        for (auto& v : r.a) v = -v;
        return r;
    }
    friend QMat operator+(const QMat& x, const QMat& y) {
        QMat r = x;
        for (size_t k = 0; k < r.a.size(); ++k) r.a[k] += y.a[k];
        return r;
    }

    /// Inverse by Gauss-Jordan; throws on singular input.
    QMat inverse() const {
        if (n != m) throw MfkError("Internal", "inverse of non-square matrix");
        QMat left = *this, right = identity(n);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (left.at(r, col) != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw MfkError("NonInvertible", "singular matrix");
            for (int j = 0; j < n; ++j) {
                std::swap(left.a[static_cast<size_t>(piv) * n + j], left.a[static_cast<size_t>(col) * n + j]);
                std::swap(right.a[static_cast<size_t>(piv) * n + j], right.a[static_cast<size_t>(col) * n + j]);
            }
            Rat inv = Rat(1) / left.at(col, col);
            for (int j = 0; j < n; ++j) {
                left.at(col, j) *= inv;
                right.at(col, j) *= inv;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || left.at(r, col) == 0) continue;
                Rat f = left.at(r, col);
                for (int j = 0; j < n; ++j) {
                    left.at(r, j) -= f * left.at(col, j);
                    right.at(r, j) -= f * right.at(col, j);
                }
            }
        }
        return right;
    }
};

/// Dense integer matrix.
struct ZMat {
    int n = 0, m = 0;
    std::vector<Int> a;

    ZMat() = default;
    ZMat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols, Int(0)) {}
    Int& at(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }

    static ZMat identity(int k) {
        ZMat r(k, k);
        for (int i = 0; i < k; ++i) r.at(i, i) = 1;
        return r;
    }
    bool operator==(const ZMat& o) const { return n == o.n && m == o.m && a == o.a; }

    ZMat transpose() const {
        ZMat r(m, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    friend ZMat operator*(const ZMat& x, const ZMat& y) {
        if (x.m != y.n) throw MfkError("Internal", "matrix size mismatch");
        ZMat r(x.n, y.m);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.m; ++k) {
                const Int& v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.m; ++j) r.at(i, j) += v * y.at(k, j);
            }
        return r;
    }
    friend ZMat operator+(const ZMat& x, const ZMat& y) {
        ZMat r = x;
        for (size_t k = 0; k < r.a.size(); ++k) r.a[k] += y.a[k];
        return r;
    }
    friend ZMat operator-(const ZMat& x) {
        ZMat r = x;
        for (auto& v : r.a) v = -v;
        return r;
    }

    QMat to_q() const {
        QMat r(n, m);
        for (size_t k = 0; k < a.size(); ++k) r.a[k] = Rat(a[k]);
        return r;
    }
    static std::optional<ZMat> from_q(const QMat& q) {
        ZMat r(q.n, q.m);
        for (size_t k = 0; k < q.a.size(); ++k) {
            if (denominator(q.a[k]) != 1) return std::nullopt;
            r.a[k] = numerator(q.a[k]);
        }
        return r;
    }
};

/// Characteristic polynomial det(T*I - A) by the Faddeev-LeVerrier recursion
/// (all divisions exact over Q, result integral for integer input).
inline ZPoly char_poly(const ZMat& mat) {
    int n = mat.n;
    QMat A = mat.to_q();
    std::vector<Rat> coef(static_cast<size_t>(n) + 1, Rat(0));
    coef[static_cast<size_t>(n)] = 1;
    QMat M = QMat::identity(n);
    QMat AM = A;
    for (int k = 1; k <= n; ++k) {
        AM = A * M;
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += AM.at(i, i);
        Rat ck = -tr / k;
        coef[static_cast<size_t>(n - k)] = ck;
        M = AM;
        for (int i = 0; i < n; ++i) M.at(i, i) += ck;
    }
    std::vector<Int> out(coef.size());
    for (size_t k = 0; k < coef.size(); ++k) {
        if (denominator(coef[k]) != 1) throw MfkError("Internal", "non-integral char poly");
        out[k] = numerator(coef[k]);
    }
    return ZPoly(std::move(out));
}

}  // namespace mfk
