#include "sebot/tree/assignment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sebot::tree {

Matrix Assignment::to_dense() const {
    Matrix s(rows(), num_clusters);
    for (std::size_t i = 0; i < rows(); ++i) s(i, cluster_of[i]) = 1.0;
    return s;
}

Assignment Assignment::identity(std::size_t n) {
    Assignment a;
    a.cluster_of.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.cluster_of[i] = i;
    a.num_clusters = n;
    return a;
}

Matrix AssignmentStack::dense_product() const {
    if (levels.empty()) return {};
    Matrix acc = levels.front().to_dense();
    for (std::size_t t = 1; t < levels.size(); ++t) acc = matmul(acc, levels[t].to_dense());
    return acc;
}

AssignmentStack assignment_stack(const EncodingTree& t) {
    const std::size_t n = t.num_leaves();
    if (n == 0) throw std::invalid_argument("assignment_stack: empty tree");
    const std::size_t k = t.depth(0);
    for (graph::NodeId v = 1; v < n; ++v) {
        if (t.depth(v) != k) {
            throw std::invalid_argument("assignment_stack: tree is not canonical (leaf depths " +
                                        std::to_string(k) + " and " + std::to_string(t.depth(v)) + ")");
        }
    }

    AssignmentStack stack;
    std::vector<TreeNodeId> current(n);
    for (graph::NodeId v = 0; v < n; ++v) current[v] = v;

    for (std::size_t level = 0; level < k; ++level) {
        std::vector<TreeNodeId> parents;
        parents.reserve(current.size());
        for (TreeNodeId id : current) parents.push_back(t.node(id).parent);
        std::vector<TreeNodeId> next = parents;
        std::sort(next.begin(), next.end(), [&](TreeNodeId x, TreeNodeId y) {
            return t.node(x).min_leaf < t.node(y).min_leaf;
        });
        next.erase(std::unique(next.begin(), next.end()), next.end());

        Assignment a;
        a.num_clusters = next.size();
        a.cluster_of.reserve(current.size());
        for (TreeNodeId p : parents) {
            auto it = std::lower_bound(next.begin(), next.end(), p, [&](TreeNodeId x, TreeNodeId y) {
                return t.node(x).min_leaf < t.node(y).min_leaf;
            });
            a.cluster_of.push_back(static_cast<std::size_t>(it - next.begin()));
        }
        stack.levels.push_back(std::move(a));
        current = std::move(next);
    }
    return stack;
}

std::vector<std::vector<graph::NodeId>> partition_at_depth(const EncodingTree& t, std::size_t depth) {
    std::vector<TreeNodeId> frontier{t.root()};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<TreeNodeId> next;
        for (TreeNodeId id : frontier) {
            if (t.is_leaf(id)) {
                next.push_back(id);
                continue;
            }
            for (TreeNodeId c : t.node(id).children) next.push_back(c);
        }
        frontier = std::move(next);
    }
    std::vector<std::vector<graph::NodeId>> out;
    for (TreeNodeId id : frontier) out.push_back(t.members(id));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sebot::tree
