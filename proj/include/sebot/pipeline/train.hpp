#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/pipeline/config.hpp"
#include "sebot/pipeline/metrics.hpp"
#include "sebot/pipeline/model.hpp"
#include "sebot/pipeline/prepare.hpp"

namespace sebot::pipeline {

struct TrainOptions {
    PrepareOptions prepare;
    // Per-epoch progress lines go here when set.
    std::ostream* log = nullptr;
};

struct TrainResult {
    TrainConfig config;
    MetricsReport test;  // at the validation-best epoch; carries the traces
    MetricsReport val;
    std::map<std::string, Matrix> best_params;
    std::vector<std::size_t> train_rows;  // rows actually used for CE
};

/// Labels of `rows` as 0/1, in row order. Throws if any of them is unlabeled.
std::vector<int> labels_of(const graph::MultiRelGraph& g, const std::vector<graph::NodeId>& rows);

/// Rows of the train split kept under cfg.train_fraction (seeded, sorted).
std::vector<std::size_t> training_rows(const graph::MultiRelGraph& g, const TrainConfig& cfg);

/// Full run: views, optimization with validation-based model selection,
/// test metrics. Throws std::runtime_error when the loss turns non-finite.
TrainResult train(const graph::MultiRelGraph& g, const TrainConfig& cfg, const TrainOptions& opt = {});
TrainResult train(const graph::MultiRelGraph& g, const Views& views, const TrainConfig& cfg,
                  const TrainOptions& opt = {});

/// Evaluation-mode predictions of a built model on `rows`.
MetricsReport evaluate_rows(SeBotModel& model, const graph::MultiRelGraph& g, const std::vector<graph::NodeId>& rows);

/// Writes `<dir>/model.bin`, `<dir>/model.json`; the json carries the
/// config so the model can be rebuilt.
void save_model(const std::filesystem::path& dir, const TrainResult& result, const graph::MultiRelGraph& g,
                const Views& views);

/// Rebuilds the model described by a saved checkpoint stem.
struct LoadedModel {
    TrainConfig config;
    Views views;
    std::unique_ptr<SeBotModel> model;
};
LoadedModel load_model(const std::filesystem::path& stem, const graph::MultiRelGraph& g,
                       const PrepareOptions& prepare = {});

/// Split name "train", "val" or "test".
const std::vector<graph::NodeId>& split_rows(const graph::MultiRelGraph& g, const std::string& split);

/// Evaluation-mode edge weights of every relational layer as JSON.
nlohmann::json export_edge_weights(SeBotModel& model);

/// Evaluation-mode embeddings of every view, keyed "alpha", "beta", "gamma",
/// "concat".
std::map<std::string, Matrix> export_embeddings(SeBotModel& model);

}  // namespace sebot::pipeline
