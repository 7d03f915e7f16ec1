#pragma once

#include "oracles.hpp"
#include "scissors/matrix.hpp"

inline scissors::IntMatrix to_matrix(const oracle::Mat& m, std::size_t cols)
{
    return scissors::IntMatrix::from_rows(m, cols);
}

inline std::vector<scissors::SparseVector> to_sparse_rows(const oracle::Mat& m)
{
    std::vector<scissors::SparseVector> out;
    for (const auto& row : m)
        out.push_back(scissors::SparseVector::from_dense(row));
    return out;
}
