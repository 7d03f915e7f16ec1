#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace scissors {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/**
 * Dense integer matrix with arbitrary-precision entries stored row-major.
 */
class IntMatrix
{
    public:
        IntMatrix() = default;
        IntMatrix(std::size_t rows, std::size_t cols);
        IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

        static IntMatrix identity(std::size_t n);
        static IntMatrix diagonal(std::size_t rows, std::size_t cols, const IntVector& diag);
        static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
        static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        const std::vector<Integer>& entries() const { return entries_; }

        Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
        const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

        IntVector row(std::size_t i) const;
        IntVector col(std::size_t j) const;
        IntMatrix transpose() const;
        bool is_zero() const;

        // Row operations used by elimination code.
        void swap_rows(std::size_t i, std::size_t j);
        void swap_cols(std::size_t i, std::size_t j);
        void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
        void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
        void negate_row(std::size_t i);
        void negate_col(std::size_t j);

        friend bool operator==(const IntMatrix& a, const IntMatrix& b);
        friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Integer> entries_;
};

/// Row vector times matrix.
IntVector multiply(const IntVector& v, const IntMatrix& m);

/// Rows of `top` followed by rows of `bottom`; column counts must agree.
IntMatrix stack_rows(const IntMatrix& top, const IntMatrix& bottom);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

std::string to_string(const IntVector& v);

/**
 * Sparse integer vector: (index, value) pairs sorted by index, no zeros.
 */
class SparseVector
{
    public:
        using Term = std::pair<std::size_t, Integer>;

        SparseVector() = default;
        explicit SparseVector(std::vector<Term> terms);  // sorts, merges, drops zeros

        static SparseVector from_dense(const IntVector& v);
        static SparseVector unit(std::size_t index, const Integer& value = 1);

        const std::vector<Term>& terms() const { return terms_; }
        bool empty() const { return terms_.empty(); }
        std::size_t size() const { return terms_.size(); }
        Integer get(std::size_t index) const;
        std::size_t max_index_bound() const { return terms_.empty() ? 0 : terms_.back().first + 1; }

        IntVector to_dense(std::size_t length) const;

        /// this += factor * other
        void add_scaled(const SparseVector& other, const Integer& factor);
        SparseVector scaled(const Integer& factor) const;

        friend bool operator==(const SparseVector& a, const SparseVector& b);
        friend bool operator<(const SparseVector& a, const SparseVector& b);

    private:
        std::vector<Term> terms_;
};

/// Row vector (sparse) times dense matrix.
IntVector multiply(const SparseVector& v, const IntMatrix& m);

/**
 * Column-major sparse integer matrix. Used for chain-complex boundaries,
 * where dimensions reach several hundred but entries are mostly zero.
 */
class SparseMatrix
{
    public:
        SparseMatrix() = default;
        SparseMatrix(std::size_t rows, std::size_t cols);
        SparseMatrix(std::size_t rows, std::size_t cols, std::vector<SparseVector> columns);

        static SparseMatrix from_dense(const IntMatrix& m);
        static SparseMatrix identity(std::size_t n);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        const SparseVector& column(std::size_t j) const { return columns_[j]; }
        const std::vector<SparseVector>& columns() const { return columns_; }
        Integer get(std::size_t i, std::size_t j) const { return columns_[j].get(i); }
        void set_column(std::size_t j, SparseVector column);

        IntMatrix to_dense() const;
        SparseMatrix transpose() const;
        bool is_zero() const;
        std::size_t nonzeros() const;

        friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
        friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<SparseVector> columns_;
};

/// Matrix-vector product with the column vector `v` (sparse over columns of m).
SparseVector apply(const SparseMatrix& m, const SparseVector& v);

/// Block matrix [a 0; 0 b].
SparseMatrix direct_sum(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace scissors
