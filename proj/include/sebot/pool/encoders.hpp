#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sebot/ad/param_store.hpp"
#include "sebot/ad/tape.hpp"
#include "sebot/core/sparse.hpp"
#include "sebot/graph/views.hpp"
#include "sebot/tree/assignment.hpp"
#include "sebot/tree/encoding_tree.hpp"

namespace sebot::pool {

enum class Readout { Mean, Sum };

struct EncoderOptions {
    std::size_t hidden_dim = 32;
    double dropout = 0.5;
    // Adds the up-path activation of each level to the unpooled down-path
    // activation of the same level.
    bool alpha_skip = true;
    Readout readout = Readout::Mean;
};

/// Constant operators for the whole-graph encoder: a_hat[t] is the normalized
/// adjacency at level t, for t = 0..k.
struct AlphaPlan {
    tree::AssignmentStack stack;
    std::vector<std::shared_ptr<const SparseMatrix>> a_hat;
    std::size_t num_nodes = 0;
};

AlphaPlan make_alpha_plan(const graph::SimpleGraph& g, const tree::AssignmentStack& stack);

/// Registers alpha.up.<t>.W and alpha.down.<t>.W for t < k.
void add_alpha_params(ad::ParamStore& store, std::size_t in_dim, std::size_t k, std::size_t hidden, Rng& rng);

/// k GCN + SEP steps up the stack, then k GCN + SEP-U steps back down with
/// the same assignments. Output is n x hidden.
ad::Tensor2 encode_alpha(const AlphaPlan& plan, const ad::Tensor2& x, ad::ParamStore& store,
                         const EncoderOptions& opt, std::uint64_t seed);
ad::Tensor2 encode_alpha(const graph::SimpleGraph& g, const tree::AssignmentStack& stack, const ad::Tensor2& x,
                         ad::ParamStore& store, const EncoderOptions& opt, std::uint64_t seed);

/// Many ego subgraphs encoded together as one block-diagonal graph. Level-0
/// rows are the subgraphs' nodes in order; `gather` maps each to a row of
/// the feature matrix handed to encode_beta.
struct BetaPlan {
    std::size_t num_subgraphs = 0;
    std::size_t depth = 0;
    std::vector<std::size_t> gather;
    // Per level t < depth: normalized block-diagonal adjacency at level t,
    // the assignment from level-t rows to level-(t+1) rows, the owning
    // subgraph of each level-(t+1) row, and 1 / cluster count per subgraph.
    std::vector<std::shared_ptr<const SparseMatrix>> a_hat;
    std::vector<tree::Assignment> pool;
    std::vector<tree::Assignment> owner;
    std::vector<std::vector<double>> inv_clusters;
};

/// Trees must be canonical with the same depth. Throws on an empty subgraph.
BetaPlan make_beta_plan(const std::vector<graph::EgoSubgraph>& subs, const std::vector<tree::EncodingTree>& trees);

/// Registers beta.<t>.W for t < k.
void add_beta_params(ad::ParamStore& store, std::size_t in_dim, std::size_t k, std::size_t hidden, Rng& rng);

/// Per level: GCN, SEP, then a mean or sum readout over the pooled rows of
/// each subgraph; levels concatenated. Output is num_subgraphs x (k*hidden).
ad::Tensor2 encode_beta(const BetaPlan& plan, const ad::Tensor2& x, ad::ParamStore& store,
                        const EncoderOptions& opt, std::uint64_t seed);
/// Single subgraph; `x_sub` holds the subgraph's rows in local id order.
ad::Tensor2 encode_beta(const graph::EgoSubgraph& sub, const tree::EncodingTree& tree, const ad::Tensor2& x_sub,
                        ad::ParamStore& store, const EncoderOptions& opt, std::uint64_t seed);

}  // namespace sebot::pool
