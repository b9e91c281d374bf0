#pragma once

#include <cstddef>

#include "sebot/ad/tape.hpp"
#include "sebot/core/matrix.hpp"
#include "sebot/core/sparse.hpp"
#include "sebot/tree/assignment.hpp"

namespace sebot::pool {

struct PooledState {
    Matrix adjacency;
    ad::Tensor2 hidden;
    std::size_t level = 0;
};

/// S^T A S
Matrix pool_adjacency(const Matrix& a, const tree::Assignment& s);
SparseMatrix pool_adjacency(const SparseMatrix& a, const tree::Assignment& s);
/// S A S^T
Matrix unpool_adjacency(const Matrix& a, const tree::Assignment& s);

/// A' = S^T A S, P = S^T H; level advances by one.
PooledState sep(const PooledState& state, const tree::Assignment& s);
/// A' = S A S^T, P = S H; level goes back by one.
PooledState sep_u(const PooledState& state, const tree::Assignment& s);

}  // namespace sebot::pool
