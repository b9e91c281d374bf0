#include "sebot/graph/multi_rel_graph.hpp"

#include <stdexcept>
#include <string>

namespace sebot::graph {

MultiRelGraph::MultiRelGraph(std::size_t num_nodes, std::vector<EdgeSet> relations, Matrix features,
                             std::vector<Label> labels, Splits splits)
    : num_nodes_(num_nodes),
      relations_(std::move(relations)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      splits_(std::move(splits)) {
    if (relations_.empty()) throw std::invalid_argument("MultiRelGraph: at least one relation is required");
    for (std::size_t r = 0; r < relations_.size(); ++r) {
        for (const Edge& e : relations_[r]) {
            if (e.src >= num_nodes_ || e.dst >= num_nodes_) {
                throw std::invalid_argument("MultiRelGraph: relation " + std::to_string(r) + " edge (" +
                                            std::to_string(e.src) + "," + std::to_string(e.dst) +
                                            ") out of range for " + std::to_string(num_nodes_) + " nodes");
            }
        }
    }
    if (features_.rows() != num_nodes_) {
        throw std::invalid_argument("MultiRelGraph: feature rows " + std::to_string(features_.rows()) +
                                    " != num_nodes " + std::to_string(num_nodes_));
    }
    if (!labels_.empty() && labels_.size() != num_nodes_) {
        throw std::invalid_argument("MultiRelGraph: label count does not match num_nodes");
    }
    std::vector<char> seen(num_nodes_, 0);
    for (const auto* part : {&splits_.train, &splits_.val, &splits_.test}) {
        for (NodeId v : *part) {
            if (v >= num_nodes_) throw std::invalid_argument("MultiRelGraph: split node id out of range");
            if (seen[v]) throw std::invalid_argument("MultiRelGraph: splits overlap at node " + std::to_string(v));
            seen[v] = 1;
        }
    }
}

std::size_t MultiRelGraph::num_edges() const noexcept {
    std::size_t total = 0;
    for (const auto& r : relations_) total += r.size();
    return total;
}

MultiRelGraph MultiRelGraph::with_relations(std::vector<EdgeSet> relations) const {
    return MultiRelGraph(num_nodes_, std::move(relations), features_, labels_, splits_);
}

MultiRelGraph MultiRelGraph::with_features(Matrix features) const {
    return MultiRelGraph(num_nodes_, relations_, std::move(features), labels_, splits_);
}

MultiRelGraph MultiRelGraph::with_splits(Splits splits) const {
    return MultiRelGraph(num_nodes_, relations_, features_, labels_, std::move(splits));
}

}  // namespace sebot::graph
