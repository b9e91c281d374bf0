#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

namespace sebot::pipeline {

/// Binary metrics with bot (label 1) as the positive class. Precision,
/// recall and f1 are 0 when their denominators vanish.
struct MetricsReport {
    double accuracy = 0.0;
    double f1 = 0.0;
    double recall = 0.0;
    double precision = 0.0;
    std::size_t true_pos = 0, false_pos = 0, false_neg = 0, true_neg = 0;

    std::size_t best_epoch = 0;
    std::vector<double> loss_trace;
    std::vector<double> val_accuracy_trace;
    double seconds_views = 0.0;
    double seconds_train = 0.0;

    /// Compares everything except the wall-clock timings.
    friend bool operator==(const MetricsReport& a, const MetricsReport& b) {
        return a.accuracy == b.accuracy && a.f1 == b.f1 && a.recall == b.recall && a.precision == b.precision &&
               a.true_pos == b.true_pos && a.false_pos == b.false_pos && a.false_neg == b.false_neg &&
               a.true_neg == b.true_neg && a.best_epoch == b.best_epoch && a.loss_trace == b.loss_trace &&
               a.val_accuracy_trace == b.val_accuracy_trace;
    }
};

MetricsReport compute_metrics(const std::vector<int>& predicted, const std::vector<int>& truth);

nlohmann::json to_json(const MetricsReport& r, bool with_traces = true);

}  // namespace sebot::pipeline
