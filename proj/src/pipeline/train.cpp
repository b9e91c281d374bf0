#include "sebot/pipeline/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sebot/ad/checkpoint.hpp"
#include "sebot/core/random.hpp"
#include "sebot/data/dataset_io.hpp"

namespace sebot::pipeline {
namespace {

constexpr std::uint64_t kEpochStream = 0x65706f6368ULL;
constexpr std::uint64_t kSubsampleStream = 0x73756273ULL;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<int> labels_of(const graph::MultiRelGraph& g, const std::vector<graph::NodeId>& rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (graph::NodeId v : rows) {
        const graph::Label l = g.label(v);
        if (l == graph::Label::Unlabeled) {
            throw std::invalid_argument("node " + std::to_string(v) + " is in a split but has no label");
        }
        out.push_back(static_cast<int>(l));
    }
    return out;
}

std::vector<std::size_t> training_rows(const graph::MultiRelGraph& g, const TrainConfig& cfg) {
    std::vector<std::size_t> rows(g.splits().train.begin(), g.splits().train.end());
    if (cfg.train_fraction < 1.0) {
        const auto keep = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(cfg.train_fraction * static_cast<double>(rows.size()))));
        Rng rng(mix_seed(cfg.seed, {kSubsampleStream}));
        std::shuffle(rows.begin(), rows.end(), rng);
        rows.resize(std::min(keep, rows.size()));
        std::sort(rows.begin(), rows.end());
    }
    return rows;
}

MetricsReport evaluate_rows(SeBotModel& model, const graph::MultiRelGraph& g, const std::vector<graph::NodeId>& rows) {
    ad::Tape tape(false);
    const ForwardOutput out = model.forward(tape, 0);
    const std::vector<int> pred_all = SeBotModel::predictions(out);
    std::vector<int> pred;
    for (graph::NodeId v : rows) pred.push_back(pred_all[v]);
    return compute_metrics(pred, labels_of(g, rows));
}

TrainResult train(const graph::MultiRelGraph& g, const TrainConfig& cfg, const TrainOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const Views views = prepare_views(g, cfg, opt.prepare);
    const double view_seconds = seconds_since(t0);
    TrainResult r = train(g, views, cfg, opt);
    r.test.seconds_views = view_seconds;
    r.val.seconds_views = view_seconds;
    return r;
}

TrainResult train(const graph::MultiRelGraph& g, const Views& views, const TrainConfig& cfg,
                  const TrainOptions& opt) {
    cfg.validate();
    const graph::Splits& sp = g.splits();
    if (sp.train.empty() || sp.val.empty() || sp.test.empty()) {
        throw std::invalid_argument("train: dataset needs non-empty train, val and test splits");
    }
    const auto t0 = std::chrono::steady_clock::now();
    SeBotModel model(g, views, cfg);
    TrainResult result;
    result.config = cfg;
    result.train_rows = training_rows(g, cfg);
    const std::vector<int> labels = labels_of(g, result.train_rows);
    labels_of(g, sp.val);
    labels_of(g, sp.test);

    const ad::AdamWConfig adam{cfg.lr, cfg.weight_decay};
    double best_val = -1.0;
    std::vector<double> loss_trace, val_trace;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const std::uint64_t step_seed = mix_seed(cfg.seed, {kEpochStream, epoch});
        ad::Tape tape(true);
        const ForwardOutput out = model.forward(tape, step_seed);
        const ad::Tensor2 loss = model.loss(out, result.train_rows, labels, step_seed);
        const double lv = loss.item();
        if (!std::isfinite(lv)) {
            std::ostringstream msg;
            msg << "train: loss became non-finite (" << lv << ") at epoch " << epoch;
            throw std::runtime_error(msg.str());
        }
        tape.backward(loss);
        ad::adamw_step(model.params(), adam);
        loss_trace.push_back(lv);

        const MetricsReport val = evaluate_rows(model, g, sp.val);
        val_trace.push_back(val.accuracy);
        if (val.accuracy > best_val) {
            best_val = val.accuracy;
            result.best_params = model.params().snapshot();
            result.val = val;
            result.val.best_epoch = epoch;
        }
        if (opt.log != nullptr) {
            *opt.log << "epoch " << epoch << " loss " << lv << " val_acc " << val.accuracy << '\n';
        }
    }
    if (cfg.epochs == 0) result.best_params = model.params().snapshot();
    model.params().restore(result.best_params);
    result.test = evaluate_rows(model, g, sp.test);
    result.test.best_epoch = result.val.best_epoch;
    result.test.loss_trace = std::move(loss_trace);
    result.test.val_accuracy_trace = std::move(val_trace);
    result.test.seconds_train = seconds_since(t0);
    result.val.seconds_train = result.test.seconds_train;
    return result;
}

void save_model(const std::filesystem::path& dir, const TrainResult& result, const graph::MultiRelGraph& g,
                const Views& views) {
    std::filesystem::create_directories(dir);
    SeBotModel model(g, views, result.config);
    model.params().restore(result.best_params);
    nlohmann::json extra;
    extra["config"] = to_json(result.config);
    extra["dataset_hash"] = data::dataset_hash(g);
    extra["best_epoch"] = result.test.best_epoch;
    ad::save_checkpoint(dir / "model", model.params(), config_hash(result.config), extra);
}

LoadedModel load_model(const std::filesystem::path& stem, const graph::MultiRelGraph& g,
                       const PrepareOptions& prepare) {
    ad::Checkpoint ckpt = ad::load_checkpoint(stem);
    if (!ckpt.manifest.contains("config")) throw std::runtime_error(stem.string() + ".json: missing 'config'");
    LoadedModel out;
    out.config = config_from_json(ckpt.manifest.at("config"));
    if (config_hash(out.config) != ckpt.manifest.value("config_hash", std::string())) {
        throw std::runtime_error(stem.string() + ".json: config hash does not match the stored config");
    }
    out.views = prepare_views(g, out.config, prepare);
    out.model = std::make_unique<SeBotModel>(g, out.views, out.config);
    ad::apply_checkpoint(ckpt, out.model->params());
    return out;
}

const std::vector<graph::NodeId>& split_rows(const graph::MultiRelGraph& g, const std::string& split) {
    if (split == "train") return g.splits().train;
    if (split == "val") return g.splits().val;
    if (split == "test") return g.splits().test;
    throw std::invalid_argument("unknown split '" + split + "' (expected train, val or test)");
}

nlohmann::json export_edge_weights(SeBotModel& model) {
    ad::Tape tape(false);
    std::vector<rel::EdgeWeightReport> reports;
    model.forward(tape, 0, &reports);
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& rep : reports) {
        nlohmann::json rels = nlohmann::json::array();
        for (const auto& edges : rep.relations) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& e : edges) arr.push_back({{"src", e.src}, {"dst", e.dst}, {"omega", e.omega}});
            rels.push_back(std::move(arr));
        }
        layers.push_back({{"layer", rep.layer}, {"relations", std::move(rels)}});
    }
    return {{"tau_g", model.config().tau_g}, {"layers", std::move(layers)}};
}

std::map<std::string, Matrix> export_embeddings(SeBotModel& model) {
    ad::Tape tape(false);
    const ForwardOutput out = model.forward(tape, 0);
    std::map<std::string, Matrix> emb;
    if (out.h_alpha) emb.emplace("alpha", out.h_alpha->value());
    if (out.h_beta) emb.emplace("beta", out.h_beta->value());
    emb.emplace("gamma", out.h_gamma.value());
    emb.emplace("concat", out.h.value());
    return emb;
}

}  // namespace sebot::pipeline
