#pragma once

#include <cstddef>
#include <vector>

#include "sebot/core/matrix.hpp"
#include "sebot/tree/encoding_tree.hpp"

namespace sebot::tree {

/// One-hot cluster assignment S_t stored as a cluster index per row.
struct Assignment {
    std::vector<std::size_t> cluster_of;
    std::size_t num_clusters = 0;

    std::size_t rows() const noexcept { return cluster_of.size(); }
    Matrix to_dense() const;
    static Assignment identity(std::size_t n);
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Per-level assignments of a canonical tree. levels[0] maps graph nodes
/// (in id order) to their parents; levels.back() maps the root's children to
/// the root. Within a level clusters are ordered by minimal contained leaf.
struct AssignmentStack {
    std::vector<Assignment> levels;

    std::size_t depth() const noexcept { return levels.size(); }
    /// Product S_0 S_1 ... S_{k-1}; every row should be a single 1 in column 0.
    Matrix dense_product() const;
};

/// Throws std::invalid_argument unless every leaf sits at the same depth.
AssignmentStack assignment_stack(const EncodingTree& t);

/// Level-by-level partitions as lists of member graph nodes; partition(t, 1)
/// gives the root's children (the coarsest nontrivial communities).
std::vector<std::vector<graph::NodeId>> partition_at_depth(const EncodingTree& t, std::size_t depth);

}  // namespace sebot::tree
