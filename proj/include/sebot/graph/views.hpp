#pragma once

#include <cstdint>
#include <vector>

#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/graph/simple_graph.hpp"

namespace sebot::graph {

/// m-hop ego network around a center node.
struct EgoSubgraph {
    SimpleGraph graph;
    NodeId center_local_id = 0;
    std::vector<NodeId> to_global;  // ascending
};

/// Union of all relations, symmetrized, self-loops and duplicates removed.
SimpleGraph collapse_to_undirected(const MultiRelGraph& g);

/// Induced subgraph on every node within `hops` BFS steps of `center`.
/// Local ids follow ascending global id.
EgoSubgraph ego_subgraph(const SimpleGraph& g, NodeId center, std::size_t hops);

/// Keeps each directed edge of each relation independently with probability
/// 1 - p. Features, labels and splits are untouched.
MultiRelGraph drop_edges(const MultiRelGraph& g, double p, std::uint64_t seed);

/// Adds round(p * |E_r|) uniformly random directed non-self-loop edges to
/// each relation r.
MultiRelGraph add_edges(const MultiRelGraph& g, double p, std::uint64_t seed);

/// Zeroes whole feature columns, each independently with probability p.
MultiRelGraph mask_feature_columns(const MultiRelGraph& g, double p, std::uint64_t seed);

/// Zeroes individual feature entries, each independently with probability p.
MultiRelGraph drop_feature_entries(const MultiRelGraph& g, double p, std::uint64_t seed);

}  // namespace sebot::graph
