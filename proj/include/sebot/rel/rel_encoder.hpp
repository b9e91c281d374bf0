#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sebot/ad/param_store.hpp"
#include "sebot/ad/tape.hpp"
#include "sebot/graph/multi_rel_graph.hpp"

namespace sebot::rel {

struct RelEncoderOptions {
    std::size_t hidden_dim = 32;
    std::size_t layers = 2;
    double tau_g = 0.01;
    double dropout = 0.5;
    // false: channel mixing weights fixed at 1 for every relation.
    bool use_rcm = true;
    // false: every edge weight fixed at +1 (no attention).
    bool signed_weights = true;
    // Draw logistic noise even when the tape is not training (gradient checks
    // with a frozen draw).
    bool force_noise = false;
};

/// Edge lists of the augmented view, split per relation into parallel
/// source / target arrays.
struct RelationalEdges {
    std::size_t num_nodes = 0;
    std::vector<std::vector<std::size_t>> src;
    std::vector<std::vector<std::size_t>> dst;

    std::size_t num_relations() const noexcept { return src.size(); }
    static RelationalEdges from_graph(const graph::MultiRelGraph& g);
};

struct WeightedEdge {
    std::size_t src = 0;
    std::size_t dst = 0;
    double omega = 0.0;
};

/// Edge weights produced by one layer, per relation, in stored edge order.
struct EdgeWeightReport {
    std::size_t layer = 0;
    std::vector<std::vector<WeightedEdge>> relations;
};

/// Registers rel.in.W, rel.in.b and, per layer l and relation r,
/// rel.<l>.<r>.g (2d x 1), rel.<l>.<r>.W, rel.<l>.<r>.mix (R*d x d), plus
/// rel.<l>.root.W.
void add_rel_params(ad::ParamStore& store, std::size_t in_dim, std::size_t num_relations,
                    const RelEncoderOptions& opt, Rng& rng);

/// tanh((g^T [h_i || h_j] + log eps - log(1 - eps)) / tau_g) for a single
/// edge j -> i.
double edge_weight(std::span<const double> h_i, std::span<const double> h_j, std::span<const double> g,
                   double tau_g, double eps);

/// All edge weights of one relation as an |E| x 1 tensor. `noise` holds
/// log eps - log(1 - eps) per edge (empty means zero noise).
ad::Tensor2 edge_weights(const ad::Tensor2& h, const ad::Tensor2& g, const std::vector<std::size_t>& src,
                         const std::vector<std::size_t>& dst, double tau_g, const std::vector<double>& noise);

/// Mean over in-neighbors of omega_ij * h_j W_r; isolated rows stay zero.
ad::Tensor2 relational_aggregate(const ad::Tensor2& h, const std::vector<std::size_t>& src,
                                 const std::vector<std::size_t>& dst, const ad::Tensor2& omega,
                                 const ad::Tensor2& w_r);

/// Channel-wise mixing of per-relation embeddings plus the root term. With
/// `mix` empty the mixing weights are all 1.
ad::Tensor2 rcm_mix(const std::vector<ad::Tensor2>& per_relation, const ad::Tensor2& h_prev,
                    const std::vector<ad::Tensor2>& mix, const ad::Tensor2& w_root);

/// Mixing weights u^r as one n x (R*d) tensor, relation-major.
ad::Tensor2 rcm_weights(const std::vector<ad::Tensor2>& per_relation, const std::vector<ad::Tensor2>& mix);

/// Input projection, then `layers` rounds of edge weighting, per-relation
/// aggregation and channel mixing. Output is n x hidden. When `reports` is
/// non-null it receives the edge weights of every layer.
ad::Tensor2 encode_gamma(const RelationalEdges& edges, const ad::Tensor2& x, ad::ParamStore& store,
                         const RelEncoderOptions& opt, std::uint64_t seed,
                         std::vector<EdgeWeightReport>* reports = nullptr);

}  // namespace sebot::rel
