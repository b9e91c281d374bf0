#include "sebot/pipeline/config.hpp"

#include <set>
#include <stdexcept>

#include "sebot/core/hash.hpp"

namespace sebot::pipeline {

std::string to_string(AugMode m) {
    switch (m) {
        case AugMode::EdgeDrop: return "edge_drop";
        case AugMode::FeatureMask: return "feature_mask";
        case AugMode::FeatureDrop: return "feature_drop";
        case AugMode::EdgeAdd: return "edge_add";
    }
    return "edge_drop";
}

AugMode aug_mode_from_string(const std::string& s) {
    if (s == "edge_drop") return AugMode::EdgeDrop;
    if (s == "feature_mask") return AugMode::FeatureMask;
    if (s == "feature_drop") return AugMode::FeatureDrop;
    if (s == "edge_add") return AugMode::EdgeAdd;
    throw std::invalid_argument("unknown aug_mode '" + s + "' (edge_drop, feature_mask, feature_drop, edge_add)");
}

std::string to_string(pool::Readout r) { return r == pool::Readout::Mean ? "mean" : "sum"; }

pool::Readout readout_from_string(const std::string& s) {
    if (s == "mean") return pool::Readout::Mean;
    if (s == "sum") return pool::Readout::Sum;
    throw std::invalid_argument("unknown readout '" + s + "' (mean, sum)");
}

void TrainConfig::validate() const {
    auto bad = [](const std::string& key, const std::string& why) {
        throw std::invalid_argument("config: " + key + " " + why);
    };
    if (k < 2) bad("k", "must be at least 2");
    if (!(aug_p >= 0.0 && aug_p <= 1.0)) bad("aug_p", "must lie in [0, 1]");
    if (hidden == 0) bad("hidden", "must be positive");
    if (layers == 0) bad("layers", "must be positive");
    if (!(lr > 0.0)) bad("lr", "must be positive");
    if (weight_decay < 0.0) bad("weight_decay", "must be nonnegative");
    if (!(dropout >= 0.0 && dropout < 1.0)) bad("dropout", "must lie in [0, 1)");
    if (lambda1 < 0.0) bad("lambda1", "must be nonnegative");
    if (lambda2 < 0.0) bad("lambda2", "must be nonnegative");
    if (!(tau > 0.0)) bad("tau", "must be positive");
    if (!(tau_g > 0.0)) bad("tau_g", "must be positive");
    if (epochs == 0) bad("epochs", "must be positive");
    if (contrastive_batch < 2) bad("contrastive_batch", "must be at least 2");
    if (!(train_fraction > 0.0 && train_fraction <= 1.0)) bad("train_fraction", "must lie in (0, 1]");
}

nlohmann::json to_json(const TrainConfig& c) {
    return {
        {"k", c.k},
        {"m", c.m},
        {"aug_p", c.aug_p},
        {"hidden", c.hidden},
        {"layers", c.layers},
        {"lr", c.lr},
        {"weight_decay", c.weight_decay},
        {"dropout", c.dropout},
        {"lambda1", c.lambda1},
        {"lambda2", c.lambda2},
        {"tau", c.tau},
        {"tau_g", c.tau_g},
        {"epochs", c.epochs},
        {"seed", c.seed},
        {"readout", to_string(c.readout)},
        {"alpha_skip", c.alpha_skip},
        {"contrastive_batch", c.contrastive_batch},
        {"train_fraction", c.train_fraction},
        {"no_alpha", c.no_alpha},
        {"no_beta", c.no_beta},
        {"no_rcm", c.no_rcm},
        {"rgcn_encoder", c.rgcn_encoder},
        {"aug_mode", to_string(c.aug_mode)},
    };
}

TrainConfig config_from_json(const nlohmann::json& j, TrainConfig c) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    static const std::set<std::string> known = {
        "k", "m", "aug_p", "hidden", "layers", "lr", "weight_decay", "dropout", "lambda1", "lambda2", "tau", "tau_g",
        "epochs", "seed", "readout", "alpha_skip", "contrastive_batch", "train_fraction", "no_alpha", "no_beta",
        "no_rcm", "rgcn_encoder", "aug_mode"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    try {
        get("k", c.k);
        get("m", c.m);
        get("aug_p", c.aug_p);
        get("hidden", c.hidden);
        get("layers", c.layers);
        get("lr", c.lr);
        get("weight_decay", c.weight_decay);
        get("dropout", c.dropout);
        get("lambda1", c.lambda1);
        get("lambda2", c.lambda2);
        get("tau", c.tau);
        get("tau_g", c.tau_g);
        get("epochs", c.epochs);
        get("seed", c.seed);
        get("alpha_skip", c.alpha_skip);
        get("contrastive_batch", c.contrastive_batch);
        get("train_fraction", c.train_fraction);
        get("no_alpha", c.no_alpha);
        get("no_beta", c.no_beta);
        get("no_rcm", c.no_rcm);
        get("rgcn_encoder", c.rgcn_encoder);
        if (j.contains("readout")) c.readout = readout_from_string(j.at("readout").get<std::string>());
        if (j.contains("aug_mode")) c.aug_mode = aug_mode_from_string(j.at("aug_mode").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return c;
}

std::string config_hash(const TrainConfig& c) {
    Fnv1a h;
    h.update(to_json(c).dump());
    return h.hex();
}

}  // namespace sebot::pipeline
