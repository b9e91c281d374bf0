#include "sebot/graph/simple_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sebot::graph {

SimpleGraph::SimpleGraph(std::size_t num_nodes, std::span<const std::pair<NodeId, NodeId>> pairs)
    : degrees_(num_nodes, 0) {
    edges_.reserve(pairs.size());
    for (auto [u, v] : pairs) {
        if (u >= num_nodes || v >= num_nodes) {
            throw std::invalid_argument("SimpleGraph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") out of range");
        }
        if (u == v) continue;
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    for (auto [u, v] : edges_) {
        ++degrees_[u];
        ++degrees_[v];
    }
    offsets_.assign(num_nodes + 1, 0);
    for (std::size_t v = 0; v < num_nodes; ++v) offsets_[v + 1] = offsets_[v] + degrees_[v];
    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges_) {
        adjacency_[cursor[u]++] = v;
        adjacency_[cursor[v]++] = u;
    }
    // Edges are sorted, so each neighbor list comes out ascending for the
    // smaller endpoint; sort once to make it hold for every node.
    for (std::size_t v = 0; v < num_nodes; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    }
}

bool SimpleGraph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Matrix SimpleGraph::adjacency_matrix() const {
    Matrix a(num_nodes(), num_nodes());
    for (auto [u, v] : edges_) {
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

}  // namespace sebot::graph
