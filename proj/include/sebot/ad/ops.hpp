#pragma once

// Differentiable operations on Tensor2. Every op records its value on the
// operand tape together with a reverse rule. Shape errors throw
// std::invalid_argument naming both shapes.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "sebot/ad/tape.hpp"
#include "sebot/core/sparse.hpp"
#include "sebot/tree/assignment.hpp"

namespace sebot::ad {

Tensor2 matmul(const Tensor2& a, const Tensor2& b);
/// a * b^T
Tensor2 matmul_nt(const Tensor2& a, const Tensor2& b);
/// Constant sparse operator applied on the left: a * h.
Tensor2 spmm(std::shared_ptr<const SparseMatrix> a, const Tensor2& h);
Tensor2 transpose(const Tensor2& a);

Tensor2 add(const Tensor2& a, const Tensor2& b);
Tensor2 sub(const Tensor2& a, const Tensor2& b);
/// a (n x c) plus a 1 x c row added to every row.
Tensor2 add_row_broadcast(const Tensor2& a, const Tensor2& row);
Tensor2 hadamard(const Tensor2& a, const Tensor2& b);
Tensor2 scale(const Tensor2& a, double s);
Tensor2 add_scalar(const Tensor2& a, double s);
/// Row i multiplied by factors[i].
Tensor2 scale_rows(const Tensor2& a, std::vector<double> factors);

Tensor2 concat_cols(const std::vector<Tensor2>& parts);
Tensor2 concat_rows(const std::vector<Tensor2>& parts);
Tensor2 slice_cols(const Tensor2& a, std::size_t begin, std::size_t count);

Tensor2 row_softmax(const Tensor2& a);
Tensor2 log_softmax_rows(const Tensor2& a);
/// n x 1 log-sum-exp of each row.
Tensor2 logsumexp_rows(const Tensor2& a);
/// `a` is n x (groups * width). For every row and channel c < width the
/// entries {g * width + c} are softmax-normalized across g.
Tensor2 group_softmax(const Tensor2& a, std::size_t groups);

Tensor2 tanh(const Tensor2& a);
Tensor2 relu(const Tensor2& a);
Tensor2 sigmoid(const Tensor2& a);
Tensor2 exp(const Tensor2& a);
Tensor2 log(const Tensor2& a);
Tensor2 row_l2_normalize(const Tensor2& a, double eps = 1e-12);

/// Inverted dropout, active only when the tape is in training mode.
Tensor2 dropout(const Tensor2& a, double p, std::uint64_t seed);

/// 1 x 1 reductions.
Tensor2 sum(const Tensor2& a);
Tensor2 mean(const Tensor2& a);
/// n x 1 sum of each row.
Tensor2 row_sum(const Tensor2& a);
/// 1 x c column sums / means.
Tensor2 sum_rows(const Tensor2& a);
Tensor2 mean_rows(const Tensor2& a);

/// out[i] = a[index[i]].
Tensor2 gather_rows(const Tensor2& a, const std::vector<std::size_t>& index);
/// n x 1 with out[i] = a(i, column[i]).
Tensor2 pick(const Tensor2& a, const std::vector<std::size_t>& column);

/// S^T H for a one-hot S given as a cluster index per row.
Tensor2 pool_rows(const Tensor2& h, const tree::Assignment& s);
/// S H for a one-hot S given as a cluster index per row.
Tensor2 unpool_rows(const Tensor2& h, const tree::Assignment& s);

/// Signed mean aggregation over directed edges:
/// out[dst[e]] += w[e] * h[src[e]] / indeg(dst[e]). `w` is |E| x 1. Rows with
/// no incoming edge stay zero. Output has `num_nodes` rows.
Tensor2 edge_aggregate(const Tensor2& h, const Tensor2& w, const std::vector<std::size_t>& src,
                       const std::vector<std::size_t>& dst, std::size_t num_nodes);

}  // namespace sebot::ad
