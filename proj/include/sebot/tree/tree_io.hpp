#pragma once

#include <memory>
#include <vector>

#include <json.hpp>

#include "sebot/tree/encoding_tree.hpp"

namespace sebot::tree {

/// Live nodes renumbered densely (leaves and root keep their ids); entry i is
/// the parent of node i, kNoNode for the root.
std::vector<TreeNodeId> parent_table(const EncodingTree& t);

/// Debug/case-study export: every live node with parent, children, member
/// leaves, cut and volume, plus height and entropy.
nlohmann::json tree_to_json(const EncodingTree& t);

/// Rebuilds from tree_to_json() output (only ids and parents are read; the
/// rest is recomputed from the graph).
EncodingTree tree_from_json(std::shared_ptr<const graph::SimpleGraph> g, const nlohmann::json& j);

}  // namespace sebot::tree
