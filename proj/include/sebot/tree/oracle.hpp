#pragma once

#include <cstddef>
#include <vector>

#include "sebot/graph/simple_graph.hpp"

namespace sebot::tree {

using Partition = std::vector<std::vector<graph::NodeId>>;

struct PartitionOptimum {
    Partition partition;  // clusters sorted by first member
    double entropy = 0.0;
};

inline constexpr std::size_t kBruteForceMaxNodes = 10;

/// Entropy (bits) of the height-2 tree root -> clusters -> leaves, evaluated
/// directly from cut and volume definitions.
double height2_entropy(const graph::SimpleGraph& g, const Partition& clusters);

/// Exhaustive search over all set partitions of the node set (restricted
/// growth strings), each evaluated as a height-2 encoding tree. Returns the
/// first minimum in enumeration order. Rejects graphs with more than
/// kBruteForceMaxNodes nodes, zero volume, or k != 2.
PartitionOptimum brute_force_min_partition(const graph::SimpleGraph& g, std::size_t k = 2);

/// Canonical form: members sorted, clusters sorted by first member.
Partition canonical_partition(Partition p);

}  // namespace sebot::tree
