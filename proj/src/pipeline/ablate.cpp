#include "sebot/pipeline/ablate.hpp"

#include <sstream>
#include <stdexcept>

#include "sebot/pipeline/baseline.hpp"
#include "sebot/pipeline/train.hpp"

namespace sebot::pipeline {

const std::vector<std::string>& ablation_axes() {
    static const std::vector<std::string> axes{"full",         "no_alpha",     "no_beta",  "no_rcm", "rgcn_encoder",
                                               "feature_mask", "feature_drop", "edge_add", "gcn"};
    return axes;
}

TrainConfig apply_axis(TrainConfig c, const std::string& axis) {
    if (axis == "full" || axis == "gcn") return c;
    if (axis == "no_alpha") c.no_alpha = true;
    else if (axis == "no_beta") c.no_beta = true;
    else if (axis == "no_rcm") c.no_rcm = true;
    else if (axis == "rgcn_encoder") c.rgcn_encoder = true;
    else if (axis == "feature_mask") c.aug_mode = AugMode::FeatureMask;
    else if (axis == "feature_drop") c.aug_mode = AugMode::FeatureDrop;
    else if (axis == "edge_add") c.aug_mode = AugMode::EdgeAdd;
    else throw std::invalid_argument("unknown ablation axis '" + axis + "'");
    return c;
}

double AblationRow::mean_accuracy() const {
    double s = 0.0;
    for (const auto& r : runs) s += r.accuracy;
    return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

double AblationRow::mean_f1() const {
    double s = 0.0;
    for (const auto& r : runs) s += r.f1;
    return runs.empty() ? 0.0 : s / static_cast<double>(runs.size());
}

std::vector<AblationRow> ablate(const graph::MultiRelGraph& g, const TrainConfig& base,
                                const std::vector<std::string>& axes, const std::vector<std::uint64_t>& seeds,
                                const PrepareOptions& prepare) {
    for (const auto& a : axes) apply_axis(base, a);
    std::vector<AblationRow> table;
    for (const auto& axis : axes) {
        AblationRow row{axis, seeds, {}};
        for (std::uint64_t seed : seeds) {
            TrainConfig c = apply_axis(base, axis);
            c.seed = seed;
            if (axis == "gcn") {
                row.runs.push_back(train_gcn_baseline(g, c));
            } else {
                TrainOptions opt;
                opt.prepare = prepare;
                row.runs.push_back(train(g, c, opt).test);
            }
        }
        table.push_back(std::move(row));
    }
    return table;
}

nlohmann::json to_json(const std::vector<AblationRow>& table) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : table) {
        nlohmann::json runs = nlohmann::json::array();
        for (std::size_t i = 0; i < row.runs.size(); ++i) {
            nlohmann::json r = to_json(row.runs[i], false);
            r["seed"] = row.seeds[i];
            runs.push_back(std::move(r));
        }
        out.push_back({{"axis", row.axis},
                       {"mean_accuracy", row.mean_accuracy()},
                       {"mean_f1", row.mean_f1()},
                       {"runs", std::move(runs)}});
    }
    return out;
}

std::string to_csv(const std::vector<AblationRow>& table) {
    std::ostringstream os;
    os.precision(17);
    os << "axis,seed,accuracy,f1,recall,precision\n";
    for (const auto& row : table) {
        for (std::size_t i = 0; i < row.runs.size(); ++i) {
            const auto& r = row.runs[i];
            os << row.axis << ',' << row.seeds[i] << ',' << r.accuracy << ',' << r.f1 << ',' << r.recall << ','
               << r.precision << '\n';
        }
    }
    return os.str();
}

}  // namespace sebot::pipeline
