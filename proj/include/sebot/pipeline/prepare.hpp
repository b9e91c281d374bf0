#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/graph/views.hpp"
#include "sebot/pipeline/config.hpp"
#include "sebot/tree/assignment.hpp"
#include "sebot/tree/encoding_tree.hpp"

namespace sebot::pipeline {

/// The three views of one dataset: the collapsed whole graph with its
/// height-k tree, one ego subgraph tree per node (row i is node i's
/// subgraph), and the augmented relational graph.
struct Views {
    std::shared_ptr<const graph::SimpleGraph> alpha_graph;
    std::vector<tree::EncodingTree> alpha_tree;  // exactly one entry
    tree::AssignmentStack alpha_stack;
    std::vector<graph::EgoSubgraph> subgraphs;
    std::vector<tree::EncodingTree> beta_trees;
    std::vector<graph::MultiRelGraph> gamma;  // exactly one entry
    bool cache_hit = false;
    std::string cache_key;
};

struct PrepareOptions {
    std::optional<std::filesystem::path> cache_dir;
    std::size_t threads = 1;
};

/// Augmented relational view for the configured mode.
graph::MultiRelGraph augment(const graph::MultiRelGraph& g, AugMode mode, double p, std::uint64_t seed);

/// Cache key over (dataset hash, k, m, p, seed, augmentation mode).
std::string view_cache_key(const std::string& dataset_hash, const TrainConfig& cfg);

/// Builds every view; with a cache directory, trees and the augmented edge
/// sets are stored under the cache key and reloaded on later calls.
Views prepare_views(const graph::MultiRelGraph& g, const TrainConfig& cfg, const PrepareOptions& opt = {});

}  // namespace sebot::pipeline
