#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sebot/core/matrix.hpp"
#include "sebot/graph/multi_rel_graph.hpp"

namespace sebot::graph {

/// Undirected simple graph: no self-loops, no duplicate edges. Edges are
/// stored as (smaller, larger) pairs in sorted order, with CSR adjacency.
class SimpleGraph {
public:
    SimpleGraph() = default;
    /// Builds from arbitrary pairs; symmetrizes, drops self-loops, dedups.
    SimpleGraph(std::size_t num_nodes, std::span<const std::pair<NodeId, NodeId>> pairs);

    std::size_t num_nodes() const noexcept { return degrees_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<std::pair<NodeId, NodeId>>& edges() const noexcept { return edges_; }
    std::size_t degree(NodeId v) const { return degrees_.at(v); }
    const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
    std::size_t volume() const noexcept { return 2 * edges_.size(); }
    std::span<const NodeId> neighbors(NodeId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    bool has_edge(NodeId u, NodeId v) const;

    /// Dense symmetric 0/1 adjacency matrix.
    Matrix adjacency_matrix() const;

    friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
        return a.degrees_.size() == b.degrees_.size() && a.edges_ == b.edges_;
    }

private:
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::size_t> degrees_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
};

}  // namespace sebot::graph
