#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "sebot/pool/encoders.hpp"

namespace sebot::pipeline {

/// How the relational view is perturbed.
enum class AugMode { EdgeDrop, FeatureMask, FeatureDrop, EdgeAdd };

std::string to_string(AugMode m);
AugMode aug_mode_from_string(const std::string& s);
std::string to_string(pool::Readout r);
pool::Readout readout_from_string(const std::string& s);

struct TrainConfig {
    std::size_t k = 6;            // encoding tree height
    std::size_t m = 2;            // ego subgraph order
    double aug_p = 0.3;           // augmentation rate of the relational view
    std::size_t hidden = 32;
    std::size_t layers = 2;       // relational encoder layers
    double lr = 0.01;
    double weight_decay = 3e-3;
    double dropout = 0.5;
    double lambda1 = 0.09;
    double lambda2 = 0.03;
    double tau = 0.1;
    double tau_g = 0.01;
    std::size_t epochs = 70;
    std::uint64_t seed = 1;
    pool::Readout readout = pool::Readout::Mean;
    bool alpha_skip = true;
    std::size_t contrastive_batch = 256;
    // Fraction of the training split actually used (data-efficiency runs).
    double train_fraction = 1.0;

    bool no_alpha = false;
    bool no_beta = false;
    bool no_rcm = false;
    bool rgcn_encoder = false;
    AugMode aug_mode = AugMode::EdgeDrop;

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;
    /// Number of views feeding the classifier.
    std::size_t num_views() const { return 1 + (no_alpha ? 0 : 1) + (no_beta ? 0 : 1); }
};

nlohmann::json to_json(const TrainConfig& c);
/// Keys absent from `j` keep the values already in `base`. Unknown keys are
/// rejected.
TrainConfig config_from_json(const nlohmann::json& j, TrainConfig base = {});
/// Fingerprint of every field.
std::string config_hash(const TrainConfig& c);

}  // namespace sebot::pipeline
