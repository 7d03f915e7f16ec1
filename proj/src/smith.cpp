#include "scissors/smith.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace scissors {

namespace {

// Matrix under reduction plus (optionally) the four transforms. Each
// elementary operation is mirrored on U, U^-1 or V, V^-1.
class Reducer
{
    public:
        Reducer(const IntMatrix& a, bool track)
            : a_(a), track_(track)
        {
            if (track_)
            {
                u_ = IntMatrix::identity(a.rows());
                ui_ = IntMatrix::identity(a.rows());
                v_ = IntMatrix::identity(a.cols());
                vi_ = IntMatrix::identity(a.cols());
            }
        }

        void swap_rows(std::size_t i, std::size_t j)
        {
            if (i == j)
                return;
            a_.swap_rows(i, j);
            if (track_)
            {
                u_.swap_rows(i, j);
                ui_.swap_cols(i, j);
            }
        }

        void swap_cols(std::size_t i, std::size_t j)
        {
            if (i == j)
                return;
            a_.swap_cols(i, j);
            if (track_)
            {
                v_.swap_cols(i, j);
                vi_.swap_rows(i, j);
            }
        }

        // row i += q * row j
        void add_row(std::size_t i, std::size_t j, const Integer& q)
        {
            if (q == 0)
                return;
            a_.add_row_multiple(i, j, q);
            if (track_)
            {
                u_.add_row_multiple(i, j, q);
                ui_.add_col_multiple(j, i, -q);
            }
        }

        // col i += q * col j
        void add_col(std::size_t i, std::size_t j, const Integer& q)
        {
            if (q == 0)
                return;
            a_.add_col_multiple(i, j, q);
            if (track_)
            {
                v_.add_col_multiple(i, j, q);
                vi_.add_row_multiple(j, i, -q);
            }
        }

        void negate_row(std::size_t i)
        {
            a_.negate_row(i);
            if (track_)
            {
                u_.negate_row(i);
                ui_.negate_col(i);
            }
        }

        void run()
        {
            std::size_t n = std::min(a_.rows(), a_.cols());
            for (std::size_t t = 0; t < n; ++t)
            {
                if (!place_pivot(t))
                    break;
                for (;;)
                {
                    if (!clear_cross(t))
                    {
                        place_pivot(t);
                        continue;
                    }
                    std::size_t bad = a_.rows();
                    for (std::size_t i = t + 1; i < a_.rows() && bad == a_.rows(); ++i)
                        for (std::size_t j = t + 1; j < a_.cols(); ++j)
                            if (a_(i, j) % a_(t, t) != 0)
                            {
                                bad = i;
                                break;
                            }
                    if (bad == a_.rows())
                        break;
                    add_row(t, bad, 1);
                }
                if (a_(t, t) < 0)
                    negate_row(t);
            }
        }

        IntMatrix& matrix() { return a_; }
        IntMatrix& u() { return u_; }
        IntMatrix& ui() { return ui_; }
        IntMatrix& v() { return v_; }
        IntMatrix& vi() { return vi_; }

    private:
        // Moves the least |entry| of the block [t.., t..] to (t, t).
        bool place_pivot(std::size_t t)
        {
            std::size_t bi = 0, bj = 0;
            bool found = false;
            for (std::size_t i = t; i < a_.rows(); ++i)
                for (std::size_t j = t; j < a_.cols(); ++j)
                {
                    const Integer& x = a_(i, j);
                    if (x == 0)
                        continue;
                    if (!found || mpz_cmpabs(x.get_mpz_t(), a_(bi, bj).get_mpz_t()) < 0)
                    {
                        bi = i;
                        bj = j;
                        found = true;
                    }
                }
            if (!found)
                return false;
            swap_rows(t, bi);
            swap_cols(t, bj);
            return true;
        }

        // Reduces row t and column t by the pivot; true when both are clear.
        bool clear_cross(std::size_t t)
        {
            bool clear = true;
            const Integer p = a_(t, t);
            for (std::size_t i = t + 1; i < a_.rows(); ++i)
            {
                if (a_(i, t) == 0)
                    continue;
                Integer q = a_(i, t) / p;  // truncating
                add_row(i, t, -q);
                if (a_(i, t) != 0)
                    clear = false;
            }
            for (std::size_t j = t + 1; j < a_.cols(); ++j)
            {
                if (a_(t, j) == 0)
                    continue;
                Integer q = a_(t, j) / p;
                add_col(j, t, -q);
                if (a_(t, j) != 0)
                    clear = false;
            }
            return clear;
        }

        IntMatrix a_;
        bool track_;
        IntMatrix u_, ui_, v_, vi_;
};

IntVector diagonal_of(const IntMatrix& m)
{
    std::size_t n = std::min(m.rows(), m.cols());
    IntVector d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = m(i, i);
    return d;
}

}  // namespace

std::size_t SmithForm::rank() const
{
    std::size_t r = 0;
    for (const auto& d : invariant_factors)
        if (d != 0)
            ++r;
    return r;
}

SmithForm smith_normal_form(const IntMatrix& a)
{
    Reducer reducer(a, true);
    reducer.run();
    SmithForm out;
    out.invariant_factors = diagonal_of(reducer.matrix());
    out.row_transform = std::move(reducer.u());
    out.row_inverse = std::move(reducer.ui());
    out.col_transform = std::move(reducer.v());
    out.col_inverse = std::move(reducer.vi());
    return out;
}

IntVector invariant_factors(const IntMatrix& a)
{
    Reducer reducer(a, false);
    reducer.run();
    return diagonal_of(reducer.matrix());
}

// ---------------------------------------------------------------------------

SparseVector UnitElimination::reduce(SparseVector v) const
{
    for (const auto& s : substitutions)
    {
        Integer x = v.get(s.column);
        if (x == 0)
            continue;
        v.add_scaled(SparseVector::unit(s.column), -x);
        v.add_scaled(s.replacement, x);
    }
    return v;
}

IntVector UnitElimination::restrict_to_residual(const SparseVector& reduced) const
{
    IntVector out(residual_columns.size());
    for (const auto& [i, x] : reduced.terms())
    {
        auto it = std::lower_bound(residual_columns.begin(), residual_columns.end(), i);
        if (it == residual_columns.end() || *it != i)
            continue;  // eliminated column; only reached with unreduced input
        out[static_cast<std::size_t>(it - residual_columns.begin())] = x;
    }
    return out;
}

UnitElimination eliminate_unit_pivots(const std::vector<SparseVector>& input, std::size_t ncols)
{
    UnitElimination out;
    out.columns = ncols;

    std::vector<SparseVector> rows = input;
    std::vector<bool> alive(rows.size(), true);
    std::vector<std::set<std::size_t>> occurrences(ncols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [j, x] : rows[r].terms())
            occurrences[j].insert(r);

    // Rows holding at least one ±1, keyed by nonzero count.
    std::set<std::pair<std::size_t, std::size_t>> ready;
    auto has_unit = [&](std::size_t r) {
        for (const auto& [j, x] : rows[r].terms())
            if (x == 1 || x == -1)
                return true;
        return false;
    };
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (has_unit(r))
            ready.emplace(rows[r].size(), r);

    std::vector<bool> eliminated(ncols, false);
    while (!ready.empty())
    {
        auto [nnz, r] = *ready.begin();
        ready.erase(ready.begin());

        // Unit column appearing in the fewest other rows.
        std::size_t col = ncols;
        std::size_t best = 0;
        for (const auto& [j, x] : rows[r].terms())
        {
            if (x != 1 && x != -1)
                continue;
            if (col == ncols || occurrences[j].size() < best)
            {
                col = j;
                best = occurrences[j].size();
            }
        }
        const Integer c = rows[r].get(col);

        SparseVector replacement = rows[r];
        replacement.add_scaled(SparseVector::unit(col), -c);
        replacement = replacement.scaled(-c);

        std::vector<std::size_t> touched(occurrences[col].begin(), occurrences[col].end());
        for (std::size_t k : touched)
        {
            if (k == r)
                continue;
            Integer factor = -rows[k].get(col) * c;
            ready.erase({rows[k].size(), k});
            for (const auto& [j, x] : rows[k].terms())
                occurrences[j].erase(k);
            rows[k].add_scaled(rows[r], factor);
            for (const auto& [j, x] : rows[k].terms())
                occurrences[j].insert(k);
            if (has_unit(k))
                ready.emplace(rows[k].size(), k);
        }
        for (const auto& [j, x] : rows[r].terms())
            occurrences[j].erase(r);
        alive[r] = false;
        eliminated[col] = true;
        out.substitutions.push_back({col, std::move(replacement)});
    }

    std::vector<std::size_t> position(ncols, ncols);
    for (std::size_t j = 0; j < ncols; ++j)
        if (!eliminated[j])
        {
            position[j] = out.residual_columns.size();
            out.residual_columns.push_back(j);
        }

    std::vector<IntVector> residual_rows;
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        if (!alive[r] || rows[r].empty())
            continue;
        IntVector dense(out.residual_columns.size());
        for (const auto& [j, x] : rows[r].terms())
            dense[position[j]] = x;
        residual_rows.push_back(std::move(dense));
    }
    out.residual = IntMatrix::from_rows(residual_rows, out.residual_columns.size());
    return out;
}

}  // namespace scissors
