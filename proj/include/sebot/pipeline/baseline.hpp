#pragma once

#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/pipeline/config.hpp"
#include "sebot/pipeline/metrics.hpp"

namespace sebot::pipeline {

/// Two-layer GCN on the collapsed undirected graph with the same optimizer,
/// epoch budget, dropout and validation-based selection as the full model.
/// Uses cfg.hidden, lr, weight_decay, dropout, epochs, seed, train_fraction.
MetricsReport train_gcn_baseline(const graph::MultiRelGraph& g, const TrainConfig& cfg);

}  // namespace sebot::pipeline
