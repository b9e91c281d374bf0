#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sebot/graph/multi_rel_graph.hpp"

namespace sebot::data {

/// Hierarchical stochastic block model with class-skewed communities.
struct SynthSpec {
    // Communities per level, top first: {2, 4} gives 2 top blocks with 4 leaf
    // communities each.
    std::vector<std::size_t> branching{2, 4};
    std::size_t nodes_per_leaf = 25;
    // Bot fraction of each leaf community, cycled when shorter than the
    // number of leaf communities.
    std::vector<double> bot_fraction{0.8, 0.2};
    // edge_prob[d]: probability of an edge between two nodes whose lowest
    // common community is d levels above the leaves (0 = same leaf
    // community). One entry per level plus one for the root.
    std::vector<double> edge_prob{0.16, 0.02, 0.002};
    double homophily = 0.53;
    std::size_t feature_dim = 16;
    // Distance between the two class means, in units of the noise sigma.
    double class_separation = 1.0;
    // Each edge u->v lands in a random relation r and its reverse v->u in
    // relation r+1 (mod R), like a follow edge seen as following/follower.
    std::size_t num_relations = 2;
    double train_fraction = 0.7;
    double val_fraction = 0.1;
    std::uint64_t seed = 1;

    std::size_t num_leaf_communities() const;
    std::size_t num_nodes() const { return num_leaf_communities() * nodes_per_leaf; }
};

/// Throws std::invalid_argument for malformed specs and for homophily
/// targets the rewiring cannot reach.
graph::MultiRelGraph generate(const SynthSpec& spec);

/// Planted community of every node at hierarchy level `level` (0 = top).
std::vector<std::size_t> planted_blocks(const SynthSpec& spec, std::size_t level = 0);

/// Same-class edge fraction over the collapsed undirected view. Throws when
/// the graph has no labels or no edges.
double measure_homophily(const graph::MultiRelGraph& g);

/// Fraction of nodes whose found cluster's majority planted block equals
/// their own planted block.
double partition_purity(const std::vector<std::vector<graph::NodeId>>& clusters,
                        const std::vector<std::size_t>& truth);

/// Seeded random train/val/test split over `nodes`.
graph::Splits random_splits(std::vector<graph::NodeId> nodes, double train_fraction, double val_fraction,
                            std::uint64_t seed);

}  // namespace sebot::data
