#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "sebot/graph/multi_rel_graph.hpp"

namespace sebot::data {

/// Dataset directory layout:
///   edges.csv     header "src,dst,relation"; relation is 0-based
///   features.csv  no header; row i holds node i's features
///   labels.csv    header "node,label"; label 0 = human, 1 = bot (optional)
///   splits.json   {"train": [...], "val": [...], "test": [...],
///                  "num_relations": R}
void save_dataset(const graph::MultiRelGraph& g, const std::filesystem::path& dir);

/// Throws std::runtime_error with file:line:column for malformed input.
/// A missing labels.csv yields an unlabeled graph; a missing splits.json
/// yields empty splits.
graph::MultiRelGraph load_dataset(const std::filesystem::path& dir);

/// Content fingerprint covering edges, features, labels and splits.
std::string dataset_hash(const graph::MultiRelGraph& g);

/// Whitespace-separated external dumps: edge lines "src dst [relation]"
/// (lines starting with '#' skipped), one feature row per node, and
/// "node label" lines. Without a splits file, labeled nodes are split at
/// random with the given fractions.
struct EdgelistSource {
    std::filesystem::path edges;
    std::filesystem::path features;
    std::optional<std::filesystem::path> labels;
    std::optional<std::filesystem::path> splits;
    double train_fraction = 0.7;
    double val_fraction = 0.1;
    std::uint64_t seed = 1;
};

graph::MultiRelGraph convert_edgelist(const EdgelistSource& src);

}  // namespace sebot::data
