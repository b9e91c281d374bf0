#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sebot/ad/param_store.hpp"
#include "sebot/ad/tape.hpp"
#include "sebot/obj/losses.hpp"
#include "sebot/pipeline/config.hpp"
#include "sebot/pipeline/prepare.hpp"
#include "sebot/pool/encoders.hpp"
#include "sebot/rel/rel_encoder.hpp"

namespace sebot::pipeline {

struct ForwardOutput {
    std::optional<ad::Tensor2> h_alpha;
    std::optional<ad::Tensor2> h_beta;  // projected to the hidden width
    ad::Tensor2 h_gamma;
    ad::Tensor2 h;  // concatenation fed to the classifier
    ad::Tensor2 log_probs;
};

/// Full model over prepared views: encoders for the enabled views, the
/// classifier and both projection heads, with parameters initialized from
/// the configured seed.
class SeBotModel {
public:
    SeBotModel(const graph::MultiRelGraph& g, const Views& views, const TrainConfig& cfg);

    ad::ParamStore& params() noexcept { return store_; }
    const ad::ParamStore& params() const noexcept { return store_; }
    const TrainConfig& config() const noexcept { return cfg_; }
    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t classifier_input_width() const;

    /// `seed` drives dropout and edge-weight noise for this pass; both are
    /// inactive on an evaluation tape.
    ForwardOutput forward(ad::Tape& tape, std::uint64_t seed, std::vector<rel::EdgeWeightReport>* reports = nullptr);

    /// CE over `rows` plus the weighted contrastive terms of the enabled
    /// views on a sampled node batch.
    ad::Tensor2 loss(const ForwardOutput& out, const std::vector<std::size_t>& rows, const std::vector<int>& labels,
                     std::uint64_t seed);

    /// Argmax class (1 = bot) per node.
    static std::vector<int> predictions(const ForwardOutput& out);

private:
    TrainConfig cfg_;
    std::size_t num_nodes_ = 0;
    ad::ParamStore store_;
    Matrix x_;
    Matrix x_gamma_;
    std::optional<pool::AlphaPlan> alpha_;
    std::optional<pool::BetaPlan> beta_;
    rel::RelationalEdges gamma_edges_;
    pool::EncoderOptions enc_opt_;
    rel::RelEncoderOptions rel_opt_;
    obj::ProjectionHead psi_n_;
    obj::ProjectionHead psi_s_;
};

}  // namespace sebot::pipeline
