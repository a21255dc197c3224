#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "prt/bigint.hpp"

namespace prt {

/// Dense rectangular matrix over Q, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    RatMatrix(std::initializer_list<std::initializer_list<BigRat>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error(ErrorKind::Arity, "ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static RatMatrix from_rows(const std::vector<std::vector<BigRat>>& rows) {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        RatMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw Error(ErrorKind::Arity, "ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    BigRat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigRat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<BigRat> column(std::size_t j) const {
        std::vector<BigRat> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<BigRat> row_sums() const {
        std::vector<BigRat> s(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
        return s;
    }

    /// Submatrix made of the given columns (in the given order), optionally
    /// followed by one extra column.
    RatMatrix select_columns(std::span<const std::size_t> cols,
                             const std::vector<BigRat>* extra = nullptr) const {
        RatMatrix m(rows_, cols.size() + (extra ? 1 : 0));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols.size(); ++k) m(i, k) = (*this)(i, cols[k]);
            if (extra) m(i, cols.size()) = (*extra)[i];
        }
        return m;
    }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigRat> data_;
};

/// Exact rank over Q by fraction-free (Bareiss) elimination. Each row is
/// first scaled to integers; pivots are chosen leftmost column first, topmost
/// nonzero row within that column.
inline std::size_t matrix_rank(const RatMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt k = 1;
        for (std::size_t j = 0; j < cols; ++j) k = lcm(k, den(m(i, j)));
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = num(m(i, j) * k);
    }

    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

/// Incrementally built row-echelon basis of a subspace of Q^dim, used for
/// repeated span-membership queries.
class SpanBasis {
public:
    explicit SpanBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return basis_.size(); }

    /// Reduce v against the basis; the result is zero iff v is in the span.
    std::vector<BigRat> reduce(std::vector<BigRat> v) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const BigRat& f = v[pivots_[k]];
            if (f == 0) continue;
            BigRat factor = f;
            for (std::size_t j = 0; j < dim_; ++j)
                if (basis_[k][j] != 0) v[j] -= factor * basis_[k][j];
        }
        return v;
    }

    bool contains(const std::vector<BigRat>& v) const {
        auto r = reduce(v);
        for (const auto& x : r)
            if (x != 0) return false;
        return true;
    }

    /// Adds v; returns false if it was already in the span.
    bool insert(const std::vector<BigRat>& v) {
        auto r = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && r[p] == 0) ++p;
        if (p == dim_) return false;
        BigRat lead = r[p];
        for (auto& x : r) x /= lead;
        // keep earlier rows reduced at the new pivot
        for (auto& row : basis_) {
            BigRat f = row[p];
            if (f == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * r[j];
        }
        basis_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<BigRat>> basis_;
    std::vector<std::size_t> pivots_;
};

}  // namespace prt
