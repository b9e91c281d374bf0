#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "sebot/graph/simple_graph.hpp"

namespace sebot::tree {

using TreeNodeId = std::size_t;
inline constexpr TreeNodeId kNoNode = std::numeric_limits<TreeNodeId>::max();
inline constexpr graph::NodeId kNoLeaf = std::numeric_limits<graph::NodeId>::max();

struct TreeNode {
    TreeNodeId parent = kNoNode;
    std::set<TreeNodeId> children;
    std::size_t cut = 0;           // edges with exactly one endpoint inside the member set
    std::size_t vol = 0;           // sum of member degrees
    std::size_t height_below = 0;  // 0 for leaves
    graph::NodeId min_leaf = kNoLeaf;
    graph::NodeId second_min_leaf = kNoLeaf;
    bool alive = true;
};

/// Rooted tree whose leaves are the graph's nodes. Leaf ids coincide with
/// graph node ids; the root is id num_leaves(); internal nodes created by
/// merge() or canonicalize() take fresh ids. Dropped nodes stay in the arena
/// with alive == false so ids remain stable.
///
/// The tree caches its structural entropy (bits) and keeps it current under
/// merge() and drop() with closed-form deltas.
class EncodingTree {
public:
    /// Flat tree: every graph node is a direct child of the root.
    explicit EncodingTree(std::shared_ptr<const graph::SimpleGraph> g);

    /// Rebuilds a tree from a parent table indexed by tree-node id. Leaves are
    /// ids [0, n), the root is id n (parent kNoNode). Entries equal to
    /// kNoNode for ids > n mark unused arena slots. Cut, volume and entropy
    /// are recomputed from the graph.
    static EncodingTree from_parents(std::shared_ptr<const graph::SimpleGraph> g,
                                     std::span<const TreeNodeId> parents);

    const graph::SimpleGraph& graph() const noexcept { return *graph_; }
    std::shared_ptr<const graph::SimpleGraph> graph_ptr() const noexcept { return graph_; }

    std::size_t num_leaves() const noexcept { return graph_->num_nodes(); }
    TreeNodeId root() const noexcept { return num_leaves(); }
    TreeNodeId leaf_of(graph::NodeId v) const noexcept { return v; }
    bool is_leaf(TreeNodeId id) const noexcept { return id < num_leaves(); }
    bool is_alive(TreeNodeId id) const noexcept { return id < nodes_.size() && nodes_[id].alive; }
    std::size_t arena_size() const noexcept { return nodes_.size(); }
    const TreeNode& node(TreeNodeId id) const { return nodes_.at(id); }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }

    /// Cached structural entropy in bits.
    double entropy() const noexcept { return cached_entropy_; }

    /// Longest root-to-leaf path length in edges. A flat tree has height 1.
    std::size_t height() const noexcept { return nodes_[root()].height_below; }
    std::size_t depth(TreeNodeId id) const;

    /// Graph nodes below `id`, ascending.
    std::vector<graph::NodeId> members(TreeNodeId id) const;

    /// Live tree nodes in ascending id order.
    std::vector<TreeNodeId> live_nodes() const;

    /// Inserts a new root child whose children are c1 and c2. Both must be
    /// distinct children of the root. Returns the new node id.
    TreeNodeId merge(TreeNodeId c1, TreeNodeId c2);

    /// Removes internal non-root node v and lifts its children to v's parent.
    void drop(TreeNodeId v);

    /// Entropy change (after - before) of merging root children a and b that
    /// share `cross_edges` graph edges.
    double merge_delta(TreeNodeId a, TreeNodeId b, std::size_t cross_edges) const;

    /// Entropy change (after - before) of drop(v).
    double drop_delta(TreeNodeId v) const;

    /// Pads every leaf shallower than k with pass-through single-child nodes
    /// placed directly above it, so all leaves sit at depth exactly k. The
    /// entropy does not change. Requires height() <= k.
    void canonicalize(std::size_t k);

    /// Depth shared by every leaf after canonicalize(); cleared by merge/drop.
    std::optional<std::size_t> canonical_depth() const noexcept { return canonical_depth_; }

    /// Merge with a caller-supplied cross-edge count (used by the minimizer,
    /// which tracks community adjacency itself). Preconditions unchecked.
    TreeNodeId merge_unchecked(TreeNodeId a, TreeNodeId b, std::size_t cross_edges);
    /// Drop without precondition checks.
    void drop_unchecked(TreeNodeId v);

private:
    void recompute_heights();
    void refresh_height_upward(TreeNodeId from);
    std::size_t count_cross_edges(TreeNodeId a, TreeNodeId b) const;

    std::shared_ptr<const graph::SimpleGraph> graph_;
    std::vector<TreeNode> nodes_;
    double cached_entropy_ = 0.0;
    std::optional<std::size_t> canonical_depth_;
};

EncodingTree flat_tree(const graph::SimpleGraph& g);

struct EntropyValue {
    double bits = 0.0;
    bool zero_volume = false;  // edgeless graph: value defined as 0
};

/// Full recomputation of the structural entropy from the graph: member sets,
/// cuts and volumes are rebuilt by scanning, independent of the tree's caches.
EntropyValue structural_entropy(const graph::SimpleGraph& g, const EncodingTree& t);

/// Cut and volume of an arbitrary node set, scanned from the graph.
struct CutVolume {
    std::size_t cut = 0;
    std::size_t vol = 0;
};
CutVolume scan_cut_volume(const graph::SimpleGraph& g, std::span<const graph::NodeId> members);

}  // namespace sebot::tree
