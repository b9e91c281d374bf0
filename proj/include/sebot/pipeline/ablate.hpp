#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/pipeline/config.hpp"
#include "sebot/pipeline/metrics.hpp"
#include "sebot/pipeline/prepare.hpp"

namespace sebot::pipeline {

/// Supported axis names: full, no_alpha, no_beta, no_rcm, rgcn_encoder,
/// feature_mask, feature_drop, edge_add, gcn (plain GCN baseline).
const std::vector<std::string>& ablation_axes();

/// `base` with one axis switched on. Throws for unknown names.
TrainConfig apply_axis(TrainConfig base, const std::string& axis);

struct AblationRow {
    std::string axis;
    std::vector<std::uint64_t> seeds;
    std::vector<MetricsReport> runs;  // one per seed, same order

    double mean_accuracy() const;
    double mean_f1() const;
};

/// One run per (axis, seed); every axis uses the same seeds.
std::vector<AblationRow> ablate(const graph::MultiRelGraph& g, const TrainConfig& base,
                                const std::vector<std::string>& axes, const std::vector<std::uint64_t>& seeds,
                                const PrepareOptions& prepare = {});

nlohmann::json to_json(const std::vector<AblationRow>& table);
/// Header "axis,seed,accuracy,f1,recall,precision".
std::string to_csv(const std::vector<AblationRow>& table);

}  // namespace sebot::pipeline
