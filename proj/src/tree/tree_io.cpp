#include "sebot/tree/tree_io.hpp"

#include <stdexcept>

namespace sebot::tree {

std::vector<TreeNodeId> parent_table(const EncodingTree& t) {
    const auto live = t.live_nodes();
    std::vector<TreeNodeId> dense_id(t.arena_size(), kNoNode);
    for (std::size_t i = 0; i < live.size(); ++i) dense_id[live[i]] = i;
    std::vector<TreeNodeId> parents(live.size(), kNoNode);
    for (std::size_t i = 0; i < live.size(); ++i) {
        const TreeNodeId p = t.node(live[i]).parent;
        parents[i] = p == kNoNode ? kNoNode : dense_id[p];
    }
    return parents;
}

nlohmann::json tree_to_json(const EncodingTree& t) {
    const auto parents = parent_table(t);
    const auto live = t.live_nodes();
    std::vector<std::vector<std::size_t>> children(live.size());
    for (std::size_t j = 0; j < live.size(); ++j)
        if (parents[j] != kNoNode) children[parents[j]].push_back(j);
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < live.size(); ++i) {
        const TreeNode& nd = t.node(live[i]);
        nodes.push_back({
            {"id", i},
            {"parent", parents[i] == kNoNode ? nlohmann::json(nullptr) : nlohmann::json(parents[i])},
            {"children", children[i]},
            {"members", t.members(live[i])},
            {"cut", nd.cut},
            {"vol", nd.vol},
        });
    }
    return {
        {"num_leaves", t.num_leaves()},
        {"root", t.root()},
        {"height", t.height()},
        {"entropy_bits", t.entropy()},
        {"nodes", nodes},
    };
}

EncodingTree tree_from_json(std::shared_ptr<const graph::SimpleGraph> g, const nlohmann::json& j) {
    const auto& nodes = j.at("nodes");
    std::vector<TreeNodeId> parents(nodes.size(), kNoNode);
    for (const auto& nd : nodes) {
        const auto id = nd.at("id").get<std::size_t>();
        if (id >= parents.size()) throw std::invalid_argument("tree_from_json: node id out of range");
        if (!nd.at("parent").is_null()) parents[id] = nd.at("parent").get<std::size_t>();
    }
    return EncodingTree::from_parents(std::move(g), parents);
}

}  // namespace sebot::tree
