#include "sebot/pipeline/metrics.hpp"

#include <stdexcept>

namespace sebot::pipeline {

MetricsReport compute_metrics(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size()) throw std::invalid_argument("compute_metrics: length mismatch");
    MetricsReport r;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool p = predicted[i] == 1, t = truth[i] == 1;
        if (p && t) ++r.true_pos;
        else if (p) ++r.false_pos;
        else if (t) ++r.false_neg;
        else ++r.true_neg;
    }
    const auto tp = static_cast<double>(r.true_pos);
    if (!truth.empty()) r.accuracy = static_cast<double>(r.true_pos + r.true_neg) / static_cast<double>(truth.size());
    if (r.true_pos + r.false_pos > 0) r.precision = tp / static_cast<double>(r.true_pos + r.false_pos);
    if (r.true_pos + r.false_neg > 0) r.recall = tp / static_cast<double>(r.true_pos + r.false_neg);
    if (r.precision + r.recall > 0.0) r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

nlohmann::json to_json(const MetricsReport& r, bool with_traces) {
    nlohmann::json j = {
        {"accuracy", r.accuracy},
        {"f1", r.f1},
        {"recall", r.recall},
        {"precision", r.precision},
        {"confusion", {{"tp", r.true_pos}, {"fp", r.false_pos}, {"fn", r.false_neg}, {"tn", r.true_neg}}},
        {"best_epoch", r.best_epoch},
        {"seconds_views", r.seconds_views},
        {"seconds_train", r.seconds_train},
    };
    if (with_traces) {
        j["loss_trace"] = r.loss_trace;
        j["val_accuracy_trace"] = r.val_accuracy_trace;
    }
    return j;
}

}  // namespace sebot::pipeline
