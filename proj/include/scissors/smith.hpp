#pragma once

#include <cstddef>
#include <vector>

#include "scissors/matrix.hpp"

namespace scissors {

/**
 * Smith normal form U·A·V = diag(d) together with the inverses of both
 * transforms, so callers can move between the original and diagonal bases
 * in either direction without re-inverting.
 *
 * d has min(rows, cols) entries, all nonnegative, each dividing the next;
 * zeros (free directions) trail.
 */
struct SmithForm
{
    IntVector invariant_factors;
    IntMatrix row_transform;  // U
    IntMatrix col_transform;  // V
    IntMatrix row_inverse;    // U^-1
    IntMatrix col_inverse;    // V^-1

    std::size_t rank() const;
};

/// Pivot is always a nonzero entry of least absolute value in the active
/// block, ties going to the lowest (row, col). Deterministic.
SmithForm smith_normal_form(const IntMatrix& a);

/// Invariant factors only; skips all transform bookkeeping.
IntVector invariant_factors(const IntMatrix& a);

/**
 * Result of eliminating ±1 pivots from a sparse row-relation system over
 * Z^ncols. Each step solves one relation for a generator with a unit
 * coefficient. What remains is a smaller dense system on the surviving
 * columns.
 */
struct UnitElimination
{
    struct Substitution
    {
        std::size_t column;
        SparseVector replacement;  // e_column == replacement modulo relations
    };

    std::size_t columns = 0;
    std::vector<Substitution> substitutions;  // apply in order
    std::vector<std::size_t> residual_columns;  // original indices, increasing
    IntMatrix residual;  // remaining relations over residual_columns

    /// Rewrites v so it is supported on residual_columns only; the result is
    /// congruent to v modulo the relations.
    SparseVector reduce(SparseVector v) const;

    /// Coordinates of a reduced vector in residual-column order.
    IntVector restrict_to_residual(const SparseVector& reduced) const;
};

UnitElimination eliminate_unit_pivots(const std::vector<SparseVector>& rows, std::size_t ncols);

}  // namespace scissors
