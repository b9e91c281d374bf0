#pragma once

#include <cstddef>
#include <vector>

#include "sebot/core/matrix.hpp"

namespace sebot {

/// Compressed sparse row matrix of doubles. Used for constant propagation
/// operators (normalized adjacencies), never for trainable values.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> col_idx;
    std::vector<double> values;

    std::size_t nnz() const noexcept { return values.size(); }

    static SparseMatrix from_dense(const Matrix& m);
    Matrix to_dense() const;
};

/// Block-diagonal stack of the given matrices, in order.
SparseMatrix block_diagonal(const std::vector<SparseMatrix>& blocks);

/// C = A * B
Matrix spmm(const SparseMatrix& a, const Matrix& b);
/// C += A^T * B, shapes must already agree.
void spmm_tn_acc(const SparseMatrix& a, const Matrix& b, Matrix& c);

}  // namespace sebot
