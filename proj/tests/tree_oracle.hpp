#pragma once

// Entropy straight from the definition over an explicit parent table, with
// no use of the library's cached cuts and volumes.

#include <algorithm>
#include <cmath>
#include <memory>
#include <tuple>
#include <vector>

#include "sebot/graph/simple_graph.hpp"
#include "sebot/tree/encoding_tree.hpp"

namespace sebot::testing {

inline double definition_entropy(const graph::SimpleGraph& g, const tree::EncodingTree& t) {
    const std::size_t n = g.num_nodes();
    const double vol_g = static_cast<double>(g.volume());
    // membership by walking each leaf up to the root
    std::vector<std::vector<bool>> member(t.arena_size(), std::vector<bool>(n, false));
    for (std::size_t v = 0; v < n; ++v) {
        for (tree::TreeNodeId id = v; id != tree::kNoNode; id = t.node(id).parent) member[id][v] = true;
    }
    auto vol_of = [&](tree::TreeNodeId id) {
        double s = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (member[id][v]) s += static_cast<double>(g.degree(v));
        return s;
    };
    auto cut_of = [&](tree::TreeNodeId id) {
        double c = 0.0;
        for (auto [a, b] : g.edges()) c += member[id][a] != member[id][b] ? 1.0 : 0.0;
        return c;
    };
    double h = 0.0;
    for (tree::TreeNodeId id = 0; id < t.arena_size(); ++id) {
        if (!t.is_alive(id) || id == t.root()) continue;
        const double v = vol_of(id);
        if (v == 0.0) continue;
        const double vp = vol_of(t.node(id).parent);
        h -= cut_of(id) / vol_g * std::log2(v / vp);
    }
    return h;
}

// Step 1 by exhaustive scan of all root-child pairs each round: largest
// reduction among connected pairs, ties to the smallest (min leaf, min leaf)
// key; with no connected pair left, the two smallest keys.
inline tree::EncodingTree naive_binary_tree(std::shared_ptr<const graph::SimpleGraph> g) {
    tree::EncodingTree t(g);
    // root child of each leaf, refreshed every round
    auto top_of = [&](graph::NodeId v) {
        tree::TreeNodeId id = v;
        while (t.node(id).parent != t.root()) id = t.node(id).parent;
        return id;
    };
    while (t.node(t.root()).children.size() > 2) {
        std::vector<tree::TreeNodeId> top(g->num_nodes());
        for (graph::NodeId v = 0; v < g->num_nodes(); ++v) top[v] = top_of(v);
        auto cross = [&](tree::TreeNodeId a, tree::TreeNodeId b) {
            std::size_t w = 0;
            for (auto [u, v] : g->edges()) w += (top[u] == a && top[v] == b) || (top[u] == b && top[v] == a);
            return w;
        };
        const std::vector<tree::TreeNodeId> kids(t.node(t.root()).children.begin(), t.node(t.root()).children.end());
        bool found = false;
        double best = 0.0;
        std::pair<graph::NodeId, graph::NodeId> best_key;
        std::pair<tree::TreeNodeId, tree::TreeNodeId> pick;
        for (std::size_t i = 0; i < kids.size(); ++i)
            for (std::size_t j = i + 1; j < kids.size(); ++j) {
                const std::size_t w = cross(kids[i], kids[j]);
                if (w == 0) continue;
                const double r = -t.merge_delta(kids[i], kids[j], w);
                const graph::NodeId ki = t.node(kids[i]).min_leaf, kj = t.node(kids[j]).min_leaf;
                const std::pair<graph::NodeId, graph::NodeId> key{std::min(ki, kj), std::max(ki, kj)};
                if (!found || r > best || (r == best && key < best_key)) {
                    found = true;
                    best = r;
                    best_key = key;
                    pick = {kids[i], kids[j]};
                }
            }
        if (!found) {
            std::vector<std::pair<graph::NodeId, tree::TreeNodeId>> keyed;
            for (auto k : kids) keyed.emplace_back(t.node(k).min_leaf, k);
            std::sort(keyed.begin(), keyed.end());
            pick = {keyed[0].second, keyed[1].second};
        }
        t.merge(pick.first, pick.second);
    }
    return t;
}

}  // namespace sebot::testing
