#include "scissors/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "scissors/error.hpp"

namespace scissors {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (entries_.size() != rows * cols)
        malformed("matrix entry count " + std::to_string(entries_.size()) + " does not equal rows*cols = "
                  + std::to_string(rows * cols));
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(std::size_t rows, std::size_t cols, const IntVector& diag)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i)
        m(i, i) = diag[i];
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows)
{
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Integer> entries;
    entries.reserve(r * c);
    for (const auto& row : rows)
    {
        if (row.size() != c)
            malformed("ragged matrix literal");
        for (long x : row)
            entries.emplace_back(x);
    }
    return IntMatrix(r, c, std::move(entries));
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols)
{
    std::vector<Integer> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& row : rows)
    {
        if (row.size() != cols)
            malformed("row length " + std::to_string(row.size()) + " does not match column count "
                      + std::to_string(cols));
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return IntMatrix(rows.size(), cols, std::move(entries));
}

IntVector IntMatrix::row(std::size_t i) const
{
    return IntVector(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_);
}

IntVector IntMatrix::col(std::size_t j) const
{
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t k = 0; k < cols_; ++k)
        if ((*this)(source, k) != 0)
            (*this)(target, k) += factor * (*this)(source, k);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t k = 0; k < rows_; ++k)
        if ((*this)(k, source) != 0)
            (*this)(k, target) += factor * (*this)(k, source);
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t k = 0; k < cols_; ++k)
        (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j)
{
    for (std::size_t k = 0; k < rows_; ++k)
        (*this)(k, j) = -(*this)(k, j);
}

bool operator==(const IntMatrix& a, const IntMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        domain_error("ShapeMismatch", "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols())
                                          + " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            const Integer& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (b(k, j) != 0)
                    out(i, j) += x * b(k, j);
        }
    return out;
}

IntVector multiply(const IntVector& v, const IntMatrix& m)
{
    if (v.size() != m.rows())
        domain_error("ShapeMismatch", "vector length " + std::to_string(v.size()) + " does not match matrix rows "
                                          + std::to_string(m.rows()));
    IntVector out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                out[j] += v[i] * m(i, j);
    }
    return out;
}

IntMatrix stack_rows(const IntMatrix& top, const IntMatrix& bottom)
{
    if (top.cols() != bottom.cols())
        domain_error("ShapeMismatch", "cannot stack matrices with different column counts");
    std::vector<Integer> entries = top.entries();
    entries.insert(entries.end(), bottom.entries().begin(), bottom.entries().end());
    return IntMatrix(top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

Integer determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols())
        domain_error("ShapeMismatch", "determinant of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (a(k, k) == 0)
        {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            a.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
            {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), previous.get_mpz_t());
            }
        previous = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::string to_string(const IntVector& v)
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i].get_str();
    out << ")";
    return out.str();
}

// ---------------------------------------------------------------------------

SparseVector::SparseVector(std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& term : terms)
    {
        if (!terms_.empty() && terms_.back().first == term.first)
            terms_.back().second += term.second;
        else
            terms_.push_back(std::move(term));
        if (terms_.back().second == 0)
            terms_.pop_back();
    }
}

SparseVector SparseVector::from_dense(const IntVector& v)
{
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.terms_.emplace_back(i, v[i]);
    return out;
}

SparseVector SparseVector::unit(std::size_t index, const Integer& value)
{
    SparseVector out;
    if (value != 0)
        out.terms_.emplace_back(index, value);
    return out;
}

Integer SparseVector::get(std::size_t index) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, std::size_t i) { return t.first < i; });
    if (it != terms_.end() && it->first == index)
        return it->second;
    return 0;
}

IntVector SparseVector::to_dense(std::size_t length) const
{
    IntVector out(length);
    for (const auto& [i, x] : terms_)
    {
        if (i >= length)
            domain_error("ShapeMismatch", "sparse index " + std::to_string(i) + " out of range "
                                              + std::to_string(length));
        out[i] = x;
    }
    return out;
}

void SparseVector::add_scaled(const SparseVector& other, const Integer& factor)
{
    if (factor == 0 || other.terms_.empty())
        return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end())
    {
        if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first))
        {
            merged.push_back(std::move(*a));
            ++a;
        }
        else if (a == terms_.end() || b->first < a->first)
        {
            merged.emplace_back(b->first, factor * b->second);
            ++b;
        }
        else
        {
            Integer value = a->second + factor * b->second;
            if (value != 0)
                merged.emplace_back(a->first, std::move(value));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
}

SparseVector SparseVector::scaled(const Integer& factor) const
{
    if (factor == 0)
        return {};
    SparseVector out = *this;
    for (auto& term : out.terms_)
        term.second *= factor;
    return out;
}

bool operator==(const SparseVector& a, const SparseVector& b)
{
    return a.terms_ == b.terms_;
}

bool operator<(const SparseVector& a, const SparseVector& b)
{
    return a.terms_ < b.terms_;
}

IntVector multiply(const SparseVector& v, const IntMatrix& m)
{
    IntVector out(m.cols());
    for (const auto& [i, x] : v.terms())
    {
        if (i >= m.rows())
            domain_error("ShapeMismatch", "vector index " + std::to_string(i) + " exceeds matrix rows");
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                out[j] += x * m(i, j);
    }
    return out;
}

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), columns_(cols)
{
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<SparseVector> columns)
    : rows_(rows), cols_(cols), columns_(std::move(columns))
{
    if (columns_.size() != cols)
        malformed("sparse matrix column count mismatch");
    for (const auto& c : columns_)
        if (c.max_index_bound() > rows)
            malformed("sparse matrix row index out of range");
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m)
{
    SparseMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        out.columns_[j] = SparseVector::from_dense(m.col(j));
    return out;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j)
        out.columns_[j] = SparseVector::unit(j);
    return out;
}

void SparseMatrix::set_column(std::size_t j, SparseVector column)
{
    if (column.max_index_bound() > rows_)
        domain_error("ShapeMismatch", "column entry beyond row count");
    columns_.at(j) = std::move(column);
}

IntMatrix SparseMatrix::to_dense() const
{
    IntMatrix out(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [i, x] : columns_[j].terms())
            out(i, j) = x;
    return out;
}

SparseMatrix SparseMatrix::transpose() const
{
    std::vector<std::vector<SparseVector::Term>> rows(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (const auto& [i, x] : columns_[j].terms())
            rows[i].emplace_back(j, x);
    SparseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out.columns_[i] = SparseVector(std::move(rows[i]));
    return out;
}

bool SparseMatrix::is_zero() const
{
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.empty(); });
}

std::size_t SparseMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& c : columns_)
        n += c.size();
    return n;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.cols() != b.rows())
        domain_error("ShapeMismatch", "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols())
                                          + " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    SparseMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        out.columns_[j] = apply(a, b.column(j));
    return out;
}

SparseVector apply(const SparseMatrix& m, const SparseVector& v)
{
    SparseVector out;
    for (const auto& [j, x] : v.terms())
    {
        if (j >= m.cols())
            domain_error("ShapeMismatch", "vector index beyond matrix columns");
        out.add_scaled(m.column(j), x);
    }
    return out;
}

SparseMatrix direct_sum(const SparseMatrix& a, const SparseMatrix& b)
{
    std::vector<SparseVector> columns;
    columns.reserve(a.cols() + b.cols());
    for (const auto& c : a.columns())
        columns.push_back(c);
    for (const auto& c : b.columns())
    {
        std::vector<SparseVector::Term> shifted;
        for (const auto& [i, x] : c.terms())
            shifted.emplace_back(i + a.rows(), x);
        columns.emplace_back(std::move(shifted));
    }
    return SparseMatrix(a.rows() + b.rows(), a.cols() + b.cols(), std::move(columns));
}

}  // namespace scissors
