#include "sebot/tree/encoding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sebot::tree {
namespace {

// -(g / V) * log2(vol / parent_vol); zero-volume nodes carry no information.
double entropy_term(double cut, double vol, double parent_vol, double total_vol) {
    if (vol <= 0.0 || parent_vol <= 0.0 || total_vol <= 0.0 || cut == 0.0) return 0.0;
    return -(cut / total_vol) * std::log2(vol / parent_vol);
}

void combine_min_leaves(const TreeNode& a, const TreeNode& b, TreeNode& out) {
    graph::NodeId cand[4] = {a.min_leaf, a.second_min_leaf, b.min_leaf, b.second_min_leaf};
    std::sort(std::begin(cand), std::end(cand));
    out.min_leaf = cand[0];
    out.second_min_leaf = cand[1];
}

}  // namespace

EncodingTree::EncodingTree(std::shared_ptr<const graph::SimpleGraph> g) : graph_(std::move(g)) {
    if (!graph_) throw std::invalid_argument("EncodingTree: null graph");
    const std::size_t n = graph_->num_nodes();
    nodes_.resize(n + 1);
    TreeNode& r = nodes_[n];
    r.vol = graph_->volume();
    r.cut = 0;
    r.height_below = n == 0 ? 0 : 1;
    const double total = static_cast<double>(graph_->volume());
    for (graph::NodeId v = 0; v < n; ++v) {
        TreeNode& leaf = nodes_[v];
        leaf.parent = n;
        leaf.vol = graph_->degree(v);
        leaf.cut = leaf.vol;
        leaf.min_leaf = v;
        r.children.insert(v);
        cached_entropy_ += entropy_term(static_cast<double>(leaf.cut), static_cast<double>(leaf.vol), total, total);
    }
    r.min_leaf = n > 0 ? 0 : kNoLeaf;
    r.second_min_leaf = n > 1 ? 1 : kNoLeaf;
}

EncodingTree EncodingTree::from_parents(std::shared_ptr<const graph::SimpleGraph> g,
                                        std::span<const TreeNodeId> parents) {
    EncodingTree t(g);
    const std::size_t n = t.num_leaves();
    if (parents.size() < n + 1) throw std::invalid_argument("from_parents: table shorter than leaves + root");
    if (parents[n] != kNoNode) throw std::invalid_argument("from_parents: root must have no parent");

    t.nodes_.assign(parents.size(), TreeNode{});
    for (TreeNodeId id = 0; id < parents.size(); ++id) {
        TreeNode& nd = t.nodes_[id];
        nd.parent = parents[id];
        nd.alive = id <= n || parents[id] != kNoNode;
    }
    for (TreeNodeId id = 0; id < parents.size(); ++id) {
        if (!t.nodes_[id].alive || id == n) continue;
        const TreeNodeId p = parents[id];
        if (p >= parents.size() || p < n || !t.nodes_[p].alive) {
            throw std::invalid_argument("from_parents: node " + std::to_string(id) + " has invalid parent");
        }
        t.nodes_[p].children.insert(id);
    }
    // Every live node must reach the root without cycles.
    for (TreeNodeId id = 0; id < parents.size(); ++id) {
        if (!t.nodes_[id].alive) continue;
        TreeNodeId cur = id;
        std::size_t steps = 0;
        while (cur != n) {
            cur = t.nodes_[cur].parent;
            if (++steps > parents.size()) throw std::invalid_argument("from_parents: cycle detected");
        }
        if (id > n && t.nodes_[id].children.empty()) {
            throw std::invalid_argument("from_parents: internal node " + std::to_string(id) + " has no children");
        }
    }
    const double total = static_cast<double>(t.graph_->volume());
    t.cached_entropy_ = 0.0;
    for (TreeNodeId id = 0; id < parents.size(); ++id) {
        if (!t.nodes_[id].alive) continue;
        auto mem = t.members(id);
        auto cv = scan_cut_volume(*t.graph_, mem);
        TreeNode& nd = t.nodes_[id];
        nd.cut = cv.cut;
        nd.vol = cv.vol;
        nd.min_leaf = mem.empty() ? kNoLeaf : mem[0];
        nd.second_min_leaf = mem.size() > 1 ? mem[1] : kNoLeaf;
    }
    for (TreeNodeId id = 0; id < parents.size(); ++id) {
        if (!t.nodes_[id].alive || id == n) continue;
        const TreeNode& nd = t.nodes_[id];
        t.cached_entropy_ += entropy_term(static_cast<double>(nd.cut), static_cast<double>(nd.vol),
                                          static_cast<double>(t.nodes_[nd.parent].vol), total);
    }
    t.recompute_heights();
    std::optional<std::size_t> common;
    bool uniform = n > 0;
    for (graph::NodeId v = 0; v < n && uniform; ++v) {
        const std::size_t d = t.depth(v);
        if (!common) common = d;
        uniform = *common == d;
    }
    if (uniform) t.canonical_depth_ = common;
    return t;
}

std::size_t EncodingTree::depth(TreeNodeId id) const {
    if (!is_alive(id)) throw std::invalid_argument("depth: node " + std::to_string(id) + " is not in the tree");
    std::size_t d = 0;
    while (id != root()) {
        id = nodes_[id].parent;
        ++d;
    }
    return d;
}

std::vector<graph::NodeId> EncodingTree::members(TreeNodeId id) const {
    if (!is_alive(id)) throw std::invalid_argument("members: node " + std::to_string(id) + " is not in the tree");
    std::vector<graph::NodeId> out;
    std::vector<TreeNodeId> stack{id};
    while (!stack.empty()) {
        TreeNodeId cur = stack.back();
        stack.pop_back();
        if (is_leaf(cur)) {
            out.push_back(cur);
            continue;
        }
        for (TreeNodeId c : nodes_[cur].children) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TreeNodeId> EncodingTree::live_nodes() const {
    std::vector<TreeNodeId> out;
    for (TreeNodeId id = 0; id < nodes_.size(); ++id)
        if (nodes_[id].alive) out.push_back(id);
    return out;
}

std::size_t EncodingTree::count_cross_edges(TreeNodeId a, TreeNodeId b) const {
    std::vector<char> in_a(num_leaves(), 0);
    for (graph::NodeId v : members(a)) in_a[v] = 1;
    std::size_t cross = 0;
    for (graph::NodeId v : members(b))
        for (graph::NodeId u : graph_->neighbors(v))
            if (in_a[u]) ++cross;
    return cross;
}

double EncodingTree::merge_delta(TreeNodeId a, TreeNodeId b, std::size_t cross_edges) const {
    const double total = static_cast<double>(graph_->volume());
    if (cross_edges == 0 || total <= 0.0) return 0.0;
    const double merged = static_cast<double>(nodes_[a].vol + nodes_[b].vol);
    // Only the new node's term and the two lifted parent volumes change:
    // dH = (g_a + g_b - g_new) / V * log2(vol_new / V) = 2 w / V * log2(vol_new / V).
    return (2.0 * static_cast<double>(cross_edges) / total) * std::log2(merged / total);
}

double EncodingTree::drop_delta(TreeNodeId v) const {
    const double total = static_cast<double>(graph_->volume());
    const TreeNode& nd = nodes_[v];
    if (total <= 0.0 || nd.vol == 0) return 0.0;
    std::size_t child_cut = 0;
    for (TreeNodeId c : nd.children) child_cut += nodes_[c].cut;
    const double parent_vol = static_cast<double>(nodes_[nd.parent].vol);
    // v's own term disappears; each child's parent volume becomes vol(v+).
    return (static_cast<double>(child_cut) - static_cast<double>(nd.cut)) / total *
           std::log2(parent_vol / static_cast<double>(nd.vol));
}

TreeNodeId EncodingTree::merge(TreeNodeId c1, TreeNodeId c2) {
    if (c1 == c2) throw std::invalid_argument("merge: the two children must differ");
    if (!is_alive(c1) || !is_alive(c2)) throw std::invalid_argument("merge: node is not in the tree");
    if (nodes_[c1].parent != root() || nodes_[c2].parent != root()) {
        throw std::invalid_argument("merge: both nodes must be children of the root");
    }
    return merge_unchecked(c1, c2, count_cross_edges(c1, c2));
}

TreeNodeId EncodingTree::merge_unchecked(TreeNodeId a, TreeNodeId b, std::size_t cross_edges) {
    cached_entropy_ += merge_delta(a, b, cross_edges);
    const TreeNodeId id = nodes_.size();
    TreeNode fresh;
    fresh.parent = root();
    fresh.children = {a, b};
    fresh.vol = nodes_[a].vol + nodes_[b].vol;
    fresh.cut = nodes_[a].cut + nodes_[b].cut - 2 * cross_edges;
    fresh.height_below = 1 + std::max(nodes_[a].height_below, nodes_[b].height_below);
    combine_min_leaves(nodes_[a], nodes_[b], fresh);
    nodes_.push_back(std::move(fresh));

    TreeNode& r = nodes_[root()];
    r.children.erase(a);
    r.children.erase(b);
    r.children.insert(id);
    nodes_[a].parent = id;
    nodes_[b].parent = id;
    r.height_below = std::max(r.height_below, nodes_[id].height_below + 1);
    canonical_depth_.reset();
    return id;
}

void EncodingTree::drop(TreeNodeId v) {
    if (!is_alive(v)) throw std::invalid_argument("drop: node " + std::to_string(v) + " is not in the tree");
    if (v == root()) throw std::invalid_argument("drop: cannot drop the root");
    if (is_leaf(v)) throw std::invalid_argument("drop: cannot drop a leaf");
    drop_unchecked(v);
}

void EncodingTree::drop_unchecked(TreeNodeId v) {
    cached_entropy_ += drop_delta(v);
    const TreeNodeId p = nodes_[v].parent;
    TreeNode& parent = nodes_[p];
    parent.children.erase(v);
    for (TreeNodeId c : nodes_[v].children) {
        nodes_[c].parent = p;
        parent.children.insert(c);
    }
    nodes_[v].children.clear();
    nodes_[v].alive = false;
    nodes_[v].parent = kNoNode;
    canonical_depth_.reset();
    refresh_height_upward(p);
}

void EncodingTree::refresh_height_upward(TreeNodeId from) {
    TreeNodeId cur = from;
    while (cur != kNoNode) {
        std::size_t h = 0;
        for (TreeNodeId c : nodes_[cur].children) h = std::max(h, nodes_[c].height_below + 1);
        if (h == nodes_[cur].height_below) break;
        nodes_[cur].height_below = h;
        cur = nodes_[cur].parent;
    }
}

void EncodingTree::recompute_heights() {
    // Post-order walk; ids are not ordered by depth after from_parents().
    std::vector<TreeNodeId> order;
    std::vector<TreeNodeId> stack{root()};
    while (!stack.empty()) {
        TreeNodeId cur = stack.back();
        stack.pop_back();
        order.push_back(cur);
        for (TreeNodeId c : nodes_[cur].children) stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::size_t h = 0;
        for (TreeNodeId c : nodes_[*it].children) h = std::max(h, nodes_[c].height_below + 1);
        nodes_[*it].height_below = h;
    }
}

void EncodingTree::canonicalize(std::size_t k) {
    if (height() > k) {
        throw std::invalid_argument("canonicalize: tree height " + std::to_string(height()) + " exceeds " +
                                    std::to_string(k));
    }
    for (graph::NodeId leaf = 0; leaf < num_leaves(); ++leaf) {
        const std::size_t d = depth(leaf);
        TreeNodeId top = leaf;  // topmost node of the pass-through chain
        for (std::size_t i = d; i < k; ++i) {
            const TreeNodeId p = nodes_[top].parent;
            const TreeNodeId id = nodes_.size();
            TreeNode pass;
            pass.parent = p;
            pass.children = {top};
            pass.vol = nodes_[leaf].vol;
            pass.cut = nodes_[leaf].cut;
            pass.height_below = nodes_[top].height_below + 1;
            pass.min_leaf = leaf;
            nodes_.push_back(std::move(pass));
            nodes_[p].children.erase(top);
            nodes_[p].children.insert(id);
            nodes_[top].parent = id;
            top = id;
        }
    }
    recompute_heights();
    if (num_leaves() > 0) canonical_depth_ = k;
}

EncodingTree flat_tree(const graph::SimpleGraph& g) {
    return EncodingTree(std::make_shared<const graph::SimpleGraph>(g));
}

CutVolume scan_cut_volume(const graph::SimpleGraph& g, std::span<const graph::NodeId> members) {
    std::vector<char> inside(g.num_nodes(), 0);
    for (graph::NodeId v : members) inside[v] = 1;
    CutVolume cv;
    for (graph::NodeId v : members) {
        cv.vol += g.degree(v);
        for (graph::NodeId u : g.neighbors(v))
            if (!inside[u]) ++cv.cut;
    }
    return cv;
}

EntropyValue structural_entropy(const graph::SimpleGraph& g, const EncodingTree& t) {
    if (t.num_leaves() != g.num_nodes()) {
        throw std::invalid_argument("structural_entropy: tree leaves do not match graph nodes");
    }
    EntropyValue out;
    if (g.volume() == 0) {
        out.zero_volume = true;
        return out;
    }
    const double total = static_cast<double>(g.volume());
    std::vector<CutVolume> scanned(t.arena_size());
    for (TreeNodeId id : t.live_nodes()) {
        auto mem = t.members(id);
        scanned[id] = scan_cut_volume(g, mem);
    }
    for (TreeNodeId id : t.live_nodes()) {
        if (id == t.root()) continue;
        const auto& self = scanned[id];
        const auto& parent = scanned[t.node(id).parent];
        out.bits += entropy_term(static_cast<double>(self.cut), static_cast<double>(self.vol),
                                 static_cast<double>(parent.vol), total);
    }
    return out;
}

}  // namespace sebot::tree
