#include "sebot/tree/minimize.hpp"

#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sebot::tree {
namespace {

// Pairs are stored by community slot. A merged community keeps the slot of
// its larger-neighborhood side, so only the other side's neighbors need
// rewriting.
struct MergeCandidate {
    double reduction;
    graph::NodeId key_lo;
    graph::NodeId key_hi;
    std::size_t a;
    std::size_t b;
    std::uint64_t version_a;
    std::uint64_t version_b;
};

// priority_queue pops the "largest"; larger reduction wins, then smaller key.
struct MergeOrder {
    bool operator()(const MergeCandidate& x, const MergeCandidate& y) const {
        if (x.reduction != y.reduction) return x.reduction < y.reduction;
        if (x.key_lo != y.key_lo) return x.key_lo > y.key_lo;
        return x.key_hi > y.key_hi;
    }
};

struct DropCandidate {
    double increase;
    graph::NodeId key_lo;
    graph::NodeId key_hi;
    TreeNodeId v;
    std::uint64_t version;
};

// Smaller increase wins, then smaller key, then smaller id.
struct DropOrder {
    bool operator()(const DropCandidate& x, const DropCandidate& y) const {
        if (x.increase != y.increase) return x.increase > y.increase;
        if (x.key_lo != y.key_lo) return x.key_lo > y.key_lo;
        if (x.key_hi != y.key_hi) return x.key_hi > y.key_hi;
        return x.v > y.v;
    }
};

using Adjacency = std::unordered_map<std::size_t, std::size_t>;

// The reduction of merging a and b is 2 w / V * log2(V / (vol_a + vol_b)).
// When a community grows, pairs whose cross count w did not change can only
// lose reduction, so their heap entries stay upper bounds and are refreshed
// lazily when they surface. Pairs whose w changed get fresh entries.
void merge_step(EncodingTree& t) {
    const graph::SimpleGraph& g = t.graph();
    const TreeNodeId root = t.root();
    const std::size_t n = g.num_nodes();
    std::vector<Adjacency> adj(n);
    std::vector<TreeNodeId> node_of(n);
    std::vector<std::uint64_t> version(n, 0);
    std::vector<bool> live(n, true);
    std::priority_queue<MergeCandidate, std::vector<MergeCandidate>, MergeOrder> heap;
    // Root children ordered by min leaf id, for the zero-cross fallback.
    std::set<std::pair<graph::NodeId, TreeNodeId>> by_key;
    std::unordered_map<TreeNodeId, std::size_t> slot_of;

    auto make_candidate = [&](std::size_t a, std::size_t b, std::size_t cross) {
        graph::NodeId ka = t.node(node_of[a]).min_leaf;
        graph::NodeId kb = t.node(node_of[b]).min_leaf;
        if (ka > kb) {
            std::swap(ka, kb);
            std::swap(a, b);
        }
        return MergeCandidate{-t.merge_delta(node_of[a], node_of[b], cross), ka, kb, a, b, version[a], version[b]};
    };

    for (std::size_t v = 0; v < n; ++v) {
        node_of[v] = v;
        slot_of.emplace(v, v);
    }
    for (TreeNodeId c : t.node(root).children) by_key.emplace(t.node(c).min_leaf, c);
    for (auto [u, v] : g.edges()) {
        adj[u][v] = 1;
        adj[v][u] = 1;
        heap.push(make_candidate(u, v, 1));
    }

    while (t.node(root).children.size() > 2) {
        std::size_t sa = 0, sb = 0;
        TreeNodeId a = kNoNode, b = kNoNode;
        while (!heap.empty()) {
            const MergeCandidate top = heap.top();
            heap.pop();
            if (!live[top.a] || !live[top.b]) continue;
            if (top.version_a != version[top.a] || top.version_b != version[top.b]) {
                heap.push(make_candidate(top.a, top.b, adj[top.a].at(top.b)));
                continue;
            }
            sa = top.a;
            sb = top.b;
            a = node_of[sa];
            b = node_of[sb];
            break;
        }
        if (a == kNoNode) {
            // No connected pair left: every remaining pair has zero delta, so
            // the tie-break picks the two smallest keys.
            auto it = by_key.begin();
            a = it->second;
            b = std::next(it)->second;
            sa = slot_of.at(a);
            sb = slot_of.at(b);
        }

        const std::size_t cross = adj[sa].count(sb) ? adj[sa][sb] : 0;
        const TreeNodeId merged = t.merge_unchecked(a, b, cross);
        by_key.erase({t.node(a).min_leaf, a});
        by_key.erase({t.node(b).min_leaf, b});
        by_key.emplace(t.node(merged).min_leaf, merged);

        const std::size_t keep = adj[sa].size() >= adj[sb].size() ? sa : sb;
        const std::size_t gone = keep == sa ? sb : sa;
        live[gone] = false;
        ++version[keep];
        node_of[keep] = merged;
        slot_of.erase(a);
        slot_of.erase(b);
        slot_of.emplace(merged, keep);

        Adjacency& big = adj[keep];
        big.erase(gone);
        for (auto [x, w] : adj[gone]) {
            if (x == keep) continue;
            Adjacency& ax = adj[x];
            ax.erase(gone);
            ax[keep] += w;
            big[x] += w;
        }
        for (auto [x, w] : adj[gone]) {
            if (x == keep) continue;
            heap.push(make_candidate(keep, x, big[x]));
        }
        Adjacency().swap(adj[gone]);
    }
}

void drop_step(EncodingTree& t, std::size_t k) {
    const TreeNodeId root = t.root();
    std::vector<std::uint64_t> version(t.arena_size(), 0);
    std::priority_queue<DropCandidate, std::vector<DropCandidate>, DropOrder> heap;

    auto push = [&](TreeNodeId v) {
        const TreeNode& nd = t.node(v);
        heap.push(DropCandidate{t.drop_delta(v), nd.min_leaf, nd.second_min_leaf, v, version[v]});
    };
    for (TreeNodeId id : t.live_nodes())
        if (id != root && !t.is_leaf(id)) push(id);

    while (t.height() > k) {
        if (heap.empty()) throw std::logic_error("minimize_to_height: no droppable node left");
        DropCandidate top = heap.top();
        heap.pop();
        if (!t.is_alive(top.v) || top.version != version[top.v]) continue;

        const TreeNodeId parent = t.node(top.v).parent;
        const std::vector<TreeNodeId> lifted(t.node(top.v).children.begin(), t.node(top.v).children.end());
        t.drop_unchecked(top.v);

        // Only the parent's children and the lifted nodes' parent changed.
        if (parent != root) {
            ++version[parent];
            push(parent);
        }
        for (TreeNodeId c : lifted) {
            if (t.is_leaf(c)) continue;
            ++version[c];
            push(c);
        }
    }
}

}  // namespace

EncodingTree build_binary_tree(std::shared_ptr<const graph::SimpleGraph> g) {
    EncodingTree t(std::move(g));
    merge_step(t);
    return t;
}

EncodingTree minimize_to_height(std::shared_ptr<const graph::SimpleGraph> g, std::size_t k) {
    if (k < 2) throw std::invalid_argument("minimize_to_height: height k must be at least 2");
    if (!g || g->volume() == 0) throw std::invalid_argument("minimize_to_height: graph has zero volume");
    EncodingTree t = build_binary_tree(std::move(g));
    drop_step(t, k);
    t.canonicalize(k);
    return t;
}

EncodingTree minimize_to_height(const graph::SimpleGraph& g, std::size_t k) {
    return minimize_to_height(std::make_shared<const graph::SimpleGraph>(g), k);
}

EncodingTree build_encoding_tree(std::shared_ptr<const graph::SimpleGraph> g, std::size_t k) {
    if (k < 2) throw std::invalid_argument("build_encoding_tree: height k must be at least 2");
    if (g && g->volume() == 0) {
        EncodingTree t(std::move(g));
        t.canonicalize(k);
        return t;
    }
    return minimize_to_height(std::move(g), k);
}

}  // namespace sebot::tree
