#pragma once

#include <cstddef>
#include <memory>

#include "sebot/tree/encoding_tree.hpp"

namespace sebot::tree {

/// Greedy fixed-height structural entropy minimization.
///
/// Step 1 repeatedly merges the pair of root children with the largest
/// entropy reduction until the root has at most two children. Candidate pairs
/// are restricted to pairs joined by at least one edge while any exist and are
/// kept in a max-heap with lazy invalidation. Step 2 repeatedly drops the
/// internal node whose removal increases entropy least until the height is at
/// most k. Ties are broken by the smallest (min leaf id, second min leaf id)
/// key. The result is canonicalized so every leaf sits at depth k.
///
/// Throws std::invalid_argument when k < 2 or the graph has zero volume.
EncodingTree minimize_to_height(std::shared_ptr<const graph::SimpleGraph> g, std::size_t k);
EncodingTree minimize_to_height(const graph::SimpleGraph& g, std::size_t k);

/// Step 1 only: the unconstrained binary tree (not canonicalized).
EncodingTree build_binary_tree(std::shared_ptr<const graph::SimpleGraph> g);

/// Like minimize_to_height, but edgeless graphs (e.g. single-node ego nets)
/// get a flat tree padded to depth k instead of an error.
EncodingTree build_encoding_tree(std::shared_ptr<const graph::SimpleGraph> g, std::size_t k);

}  // namespace sebot::tree
