#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <cstdint>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "sebot/core/matrix.hpp"
#include "sebot/core/random.hpp"
#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/graph/simple_graph.hpp"

namespace sebot::testing {

inline Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double scale = 1.0) {
    Matrix m(r, c);
    for (double& x : m.data()) x = (2.0 * uniform01(rng) - 1.0) * scale;
    return m;
}

/// Random connected simple graph: a random spanning tree plus extra edges
/// with probability p.
inline graph::SimpleGraph random_connected_graph(std::size_t n, double p, Rng& rng) {
    std::vector<std::pair<graph::NodeId, graph::NodeId>> pairs;
    for (std::size_t v = 1; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, v - 1);
        pairs.emplace_back(pick(rng), v);
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) pairs.emplace_back(u, v);
    return graph::SimpleGraph(n, pairs);
}

/// Two planted communities (first half, second half) with intra/inter edge
/// probabilities; a bridge keeps the graph connected.
inline graph::SimpleGraph planted_two_community(std::size_t n, double p_in, double p_out, Rng& rng) {
    std::vector<std::pair<graph::NodeId, graph::NodeId>> pairs;
    const std::size_t half = n / 2;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const bool same = (u < half) == (v < half);
            if (uniform01(rng) < (same ? p_in : p_out)) pairs.emplace_back(u, v);
        }
    pairs.emplace_back(half - 1, half);
    return graph::SimpleGraph(n, pairs);
}

inline graph::SimpleGraph two_triangles() {
    const std::vector<std::pair<graph::NodeId, graph::NodeId>> e{{0, 1}, {1, 2}, {0, 2}, {3, 4},
                                                                 {4, 5}, {3, 5}, {2, 3}};
    return graph::SimpleGraph(6, e);
}

/// Random directed multi-relational graph with features, balanced labels
/// and a 50/25/25 split.
inline graph::MultiRelGraph random_multirel(std::size_t n, std::size_t relations, std::size_t edges_per_relation,
                                            std::size_t feature_dim, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<graph::EdgeSet> rels(relations);
    for (auto& es : rels) {
        while (es.size() < edges_per_relation) {
            const std::size_t a = pick(rng), b = pick(rng);
            if (a != b) es.push_back({a, b});
        }
    }
    std::vector<graph::Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i % 2 ? graph::Label::Bot : graph::Label::Human;
    graph::Splits sp;
    for (std::size_t i = 0; i < n; ++i) {
        if (i % 4 < 2) sp.train.push_back(i);
        else if (i % 4 == 2) sp.val.push_back(i);
        else sp.test.push_back(i);
    }
    return graph::MultiRelGraph(n, std::move(rels), random_matrix(n, feature_dim, rng), std::move(labels),
                                std::move(sp));
}

}  // namespace sebot::testing
