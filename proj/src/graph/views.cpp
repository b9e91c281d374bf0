#include "sebot/graph/views.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "sebot/core/random.hpp"

namespace sebot::graph {
namespace {

void require_probability(double p, const char* op) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(op) + ": probability must lie in [0,1]");
}

}  // namespace

SimpleGraph collapse_to_undirected(const MultiRelGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(g.num_edges());
    for (const auto& rel : g.relations())
        for (const Edge& e : rel) pairs.emplace_back(e.src, e.dst);
    return SimpleGraph(g.num_nodes(), pairs);
}

EgoSubgraph ego_subgraph(const SimpleGraph& g, NodeId center, std::size_t hops) {
    if (center >= g.num_nodes()) throw std::invalid_argument("ego_subgraph: center out of range");
    constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dist(g.num_nodes(), kUnseen);
    std::vector<NodeId> reached{center};
    std::deque<NodeId> frontier{center};
    dist[center] = 0;
    while (!frontier.empty()) {
        NodeId u = frontier.front();
        frontier.pop_front();
        if (dist[u] == hops) continue;
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] != kUnseen) continue;
            dist[v] = dist[u] + 1;
            reached.push_back(v);
            frontier.push_back(v);
        }
    }
    std::sort(reached.begin(), reached.end());

    std::vector<std::size_t> local(g.num_nodes(), kUnseen);
    for (std::size_t i = 0; i < reached.size(); ++i) local[reached[i]] = i;

    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId u : reached)
        for (NodeId v : g.neighbors(u))
            if (u < v && local[v] != kUnseen) pairs.emplace_back(local[u], local[v]);

    EgoSubgraph sub;
    sub.graph = SimpleGraph(reached.size(), pairs);
    sub.center_local_id = local[center];
    sub.to_global = std::move(reached);
    return sub;
}

MultiRelGraph drop_edges(const MultiRelGraph& g, double p, std::uint64_t seed) {
    require_probability(p, "drop_edges");
    Rng rng(seed);
    std::vector<EdgeSet> kept(g.num_relations());
    for (std::size_t r = 0; r < g.num_relations(); ++r) {
        for (const Edge& e : g.relation(r)) {
            if (uniform01(rng) >= p) kept[r].push_back(e);
        }
    }
    return g.with_relations(std::move(kept));
}

MultiRelGraph add_edges(const MultiRelGraph& g, double p, std::uint64_t seed) {
    require_probability(p, "add_edges");
    const std::size_t n = g.num_nodes();
    std::vector<EdgeSet> rels = g.relations();
    if (n < 2) return g;
    Rng rng(seed);
    for (auto& rel : rels) {
        const auto extra = static_cast<std::size_t>(std::llround(p * static_cast<double>(rel.size())));
        for (std::size_t i = 0; i < extra; ++i) {
            NodeId u = rng() % n;
            NodeId v = rng() % (n - 1);
            if (v >= u) ++v;
            rel.push_back({u, v});
        }
    }
    return g.with_relations(std::move(rels));
}

MultiRelGraph mask_feature_columns(const MultiRelGraph& g, double p, std::uint64_t seed) {
    require_probability(p, "mask_feature_columns");
    Rng rng(seed);
    Matrix x = g.features();
    for (std::size_t c = 0; c < x.cols(); ++c) {
        if (uniform01(rng) < p)
            for (std::size_t r = 0; r < x.rows(); ++r) x(r, c) = 0.0;
    }
    return g.with_features(std::move(x));
}

MultiRelGraph drop_feature_entries(const MultiRelGraph& g, double p, std::uint64_t seed) {
    require_probability(p, "drop_feature_entries");
    Rng rng(seed);
    Matrix x = g.features();
    for (double& v : x.data())
        if (uniform01(rng) < p) v = 0.0;
    return g.with_features(std::move(x));
}

}  // namespace sebot::graph
