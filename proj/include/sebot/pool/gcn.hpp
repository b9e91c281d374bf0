#pragma once

#include <memory>

#include "sebot/ad/tape.hpp"
#include "sebot/core/matrix.hpp"
#include "sebot/core/sparse.hpp"

namespace sebot::pool {

/// D^{-1/2} (A + I) D^{-1/2} with D the row sums of A + I. A must be square,
/// symmetric and nonnegative.
Matrix normalize_adjacency(const Matrix& a);
SparseMatrix normalize_adjacency(const SparseMatrix& a);

/// relu(Â H W) with Â = normalize_adjacency(A).
ad::Tensor2 gcn_layer(const Matrix& a, const ad::Tensor2& h, const ad::Tensor2& w);

/// relu(Â (H W)) for a precomputed normalized operator.
ad::Tensor2 gcn_propagate(std::shared_ptr<const SparseMatrix> a_hat, const ad::Tensor2& h, const ad::Tensor2& w);

}  // namespace sebot::pool
