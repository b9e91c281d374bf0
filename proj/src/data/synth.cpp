#include "sebot/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "sebot/core/random.hpp"
#include "sebot/graph/views.hpp"

namespace sebot::data {
namespace {

using graph::NodeId;

void validate(const SynthSpec& s) {
    if (s.branching.empty()) throw std::invalid_argument("SynthSpec: branching must have at least one level");
    for (auto b : s.branching)
        if (b == 0) throw std::invalid_argument("SynthSpec: branching factors must be positive");
    if (s.nodes_per_leaf == 0) throw std::invalid_argument("SynthSpec: nodes_per_leaf must be positive");
    if (s.edge_prob.size() != s.branching.size() + 1) {
        throw std::invalid_argument("SynthSpec: edge_prob needs " + std::to_string(s.branching.size() + 1) +
                                    " entries (one per level plus the root)");
    }
    for (double p : s.edge_prob)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("SynthSpec: edge probabilities must lie in [0, 1]");
    if (s.bot_fraction.empty()) throw std::invalid_argument("SynthSpec: bot_fraction must not be empty");
    for (double f : s.bot_fraction)
        if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("SynthSpec: bot fractions must lie in [0, 1]");
    if (!(s.homophily >= 0.0 && s.homophily <= 1.0)) throw std::invalid_argument("SynthSpec: homophily must lie in [0, 1]");
    if (s.feature_dim == 0) throw std::invalid_argument("SynthSpec: feature_dim must be positive");
    if (s.num_relations == 0) throw std::invalid_argument("SynthSpec: num_relations must be positive");
    if (s.train_fraction < 0.0 || s.val_fraction < 0.0 || s.train_fraction + s.val_fraction > 1.0) {
        throw std::invalid_argument("SynthSpec: split fractions must be nonnegative and sum to at most 1");
    }
}

// Levels above the leaves at which the two leaf communities first meet.
std::size_t lca_height(std::size_t a, std::size_t b, const std::vector<std::size_t>& branching) {
    std::size_t h = 0;
    for (std::size_t lvl = branching.size(); lvl-- > 0 && a != b;) {
        a /= branching[lvl];
        b /= branching[lvl];
        ++h;
    }
    return h;
}

}  // namespace

std::size_t SynthSpec::num_leaf_communities() const {
    std::size_t c = 1;
    for (auto b : branching) c *= b;
    return c;
}

std::vector<std::size_t> planted_blocks(const SynthSpec& spec, std::size_t level) {
    validate(spec);
    if (level >= spec.branching.size()) throw std::invalid_argument("planted_blocks: level out of range");
    std::size_t below = 1;
    for (std::size_t l = level + 1; l < spec.branching.size(); ++l) below *= spec.branching[l];
    std::vector<std::size_t> out(spec.num_nodes());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = v / spec.nodes_per_leaf / below;
    return out;
}

graph::MultiRelGraph generate(const SynthSpec& spec) {
    validate(spec);
    const std::size_t n = spec.num_nodes();
    const std::size_t leaves = spec.num_leaf_communities();
    auto community = [&](NodeId v) { return v / spec.nodes_per_leaf; };

    Rng label_rng(mix_seed(spec.seed, {1}));
    std::vector<graph::Label> labels(n, graph::Label::Human);
    for (std::size_t c = 0; c < leaves; ++c) {
        std::vector<NodeId> members(spec.nodes_per_leaf);
        for (std::size_t i = 0; i < members.size(); ++i) members[i] = c * spec.nodes_per_leaf + i;
        std::shuffle(members.begin(), members.end(), label_rng);
        const double frac = spec.bot_fraction[c % spec.bot_fraction.size()];
        const auto bots = static_cast<std::size_t>(std::lround(frac * static_cast<double>(members.size())));
        for (std::size_t i = 0; i < bots; ++i) labels[members[i]] = graph::Label::Bot;
    }

    Rng edge_rng(mix_seed(spec.seed, {2}));
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::set<std::pair<NodeId, NodeId>> present;
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            const double p = spec.edge_prob[lca_height(community(u), community(v), spec.branching)];
            if (uniform01(edge_rng) < p) {
                edges.emplace_back(u, v);
                present.emplace(u, v);
            }
        }
    }
    if (edges.empty()) {
        throw std::invalid_argument("generate: edge probabilities produced an empty graph");
    }

    // Rewire one endpoint of an edge inside the other endpoint's leaf
    // community until the same-class fraction hits the target.
    auto same = [&](const std::pair<NodeId, NodeId>& e) { return labels[e.first] == labels[e.second]; };
    std::size_t same_count = std::count_if(edges.begin(), edges.end(), same);
    const auto target = static_cast<std::size_t>(std::lround(spec.homophily * static_cast<double>(edges.size())));
    Rng rewire_rng(mix_seed(spec.seed, {3}));
    std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_member(0, spec.nodes_per_leaf - 1);
    const std::size_t max_attempts = 200 * edges.size() + 10000;
    std::size_t attempts = 0;
    while (same_count != target) {
        if (++attempts > max_attempts) {
            throw std::invalid_argument("generate: homophily target " + std::to_string(spec.homophily) +
                                        " unreachable by rewiring (reached " +
                                        std::to_string(static_cast<double>(same_count) / edges.size()) +
                                        "); communities may lack nodes of the needed class");
        }
        const bool want_cross = same_count > target;
        const std::size_t idx = pick_edge(rewire_rng);
        auto [u, v] = edges[idx];
        if (same(edges[idx]) != want_cross) continue;
        if (uniform01(rewire_rng) < 0.5) std::swap(u, v);
        // Keep u, move the other endpoint to w in v's leaf community.
        const NodeId w = community(v) * spec.nodes_per_leaf + pick_member(rewire_rng);
        if (w == u) continue;
        if ((labels[w] == labels[u]) == want_cross) continue;
        const auto key = std::minmax(u, w);
        if (present.count(key)) continue;
        present.erase(std::minmax(edges[idx].first, edges[idx].second));
        present.insert(key);
        edges[idx] = key;
        if (want_cross) --same_count;
        else ++same_count;
    }

    std::vector<graph::EdgeSet> relations(spec.num_relations);
    Rng rel_rng(mix_seed(spec.seed, {4}));
    std::uniform_int_distribution<std::size_t> pick_rel(0, spec.num_relations - 1);
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) {
        const std::size_t r = pick_rel(rel_rng);
        const bool flip = uniform01(rel_rng) < 0.5;
        const graph::NodeId u = flip ? b : a;
        const graph::NodeId v = flip ? a : b;
        relations[r].push_back({u, v});
        relations[(r + 1) % spec.num_relations].push_back({v, u});
    }

    Rng feat_rng(mix_seed(spec.seed, {5}));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> dir(spec.feature_dim);
    double norm = 0.0;
    while (norm < 1e-12) {
        norm = 0.0;
        for (double& d : dir) {
            d = normal(feat_rng);
            norm += d * d;
        }
        norm = std::sqrt(norm);
    }
    for (double& d : dir) d /= norm;
    Matrix features(n, spec.feature_dim);
    for (NodeId v = 0; v < n; ++v) {
        const double sign = labels[v] == graph::Label::Bot ? 0.5 : -0.5;
        for (std::size_t c = 0; c < spec.feature_dim; ++c)
            features(v, c) = sign * spec.class_separation * dir[c] + normal(feat_rng);
    }

    std::vector<NodeId> all(n);
    for (NodeId v = 0; v < n; ++v) all[v] = v;
    graph::Splits splits = random_splits(all, spec.train_fraction, spec.val_fraction, mix_seed(spec.seed, {6}));
    return graph::MultiRelGraph(n, std::move(relations), std::move(features), std::move(labels), std::move(splits));
}

double measure_homophily(const graph::MultiRelGraph& g) {
    if (!g.has_labels()) throw std::invalid_argument("measure_homophily: graph has no labels");
    const graph::SimpleGraph s = graph::collapse_to_undirected(g);
    if (s.num_edges() == 0) throw std::invalid_argument("measure_homophily: graph has no edges");
    std::size_t same = 0;
    for (const auto& [u, v] : s.edges()) same += g.label(u) == g.label(v) ? 1 : 0;
    return static_cast<double>(same) / static_cast<double>(s.num_edges());
}

double partition_purity(const std::vector<std::vector<graph::NodeId>>& clusters,
                        const std::vector<std::size_t>& truth) {
    std::size_t correct = 0, total = 0;
    for (const auto& c : clusters) {
        std::map<std::size_t, std::size_t> votes;
        for (NodeId v : c) ++votes[truth.at(v)];
        std::size_t best = 0;
        for (const auto& [_, k] : votes) best = std::max(best, k);
        correct += best;
        total += c.size();
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

graph::Splits random_splits(std::vector<graph::NodeId> nodes, double train_fraction, double val_fraction,
                            std::uint64_t seed) {
    Rng rng(seed);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const double n = static_cast<double>(nodes.size());
    const auto n_train = static_cast<std::size_t>(std::lround(train_fraction * n));
    const auto n_val = std::min(nodes.size() - n_train, static_cast<std::size_t>(std::lround(val_fraction * n)));
    graph::Splits s;
    s.train.assign(nodes.begin(), nodes.begin() + n_train);
    s.val.assign(nodes.begin() + n_train, nodes.begin() + n_train + n_val);
    s.test.assign(nodes.begin() + n_train + n_val, nodes.end());
    for (auto* part : {&s.train, &s.val, &s.test}) std::sort(part->begin(), part->end());
    return s;
}

}  // namespace sebot::data
