#include "sebot/pool/encoders.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "sebot/ad/ops.hpp"
#include "sebot/core/random.hpp"
#include "sebot/pool/gcn.hpp"
#include "sebot/pool/sep.hpp"

namespace sebot::pool {
namespace {

SparseMatrix sparse_adjacency(const graph::SimpleGraph& g) {
    SparseMatrix a;
    a.rows = a.cols = g.num_nodes();
    for (graph::NodeId v = 0; v < g.num_nodes(); ++v) {
        for (graph::NodeId u : g.neighbors(v)) {
            a.col_idx.push_back(u);
            a.values.push_back(1.0);
        }
        a.row_ptr.push_back(a.values.size());
    }
    return a;
}

ad::Tensor2 param(const ad::Tensor2& like, ad::ParamStore& store, const std::string& name) {
    return like.tape().param(store.get(name));
}

std::string alpha_name(const char* dir, std::size_t t) { return "alpha." + std::string(dir) + "." + std::to_string(t) + ".W"; }
std::string beta_name(std::size_t t) { return "beta." + std::to_string(t) + ".W"; }

}  // namespace

AlphaPlan make_alpha_plan(const graph::SimpleGraph& g, const tree::AssignmentStack& stack) {
    if (stack.depth() == 0) throw std::invalid_argument("make_alpha_plan: empty assignment stack");
    if (stack.levels.front().rows() != g.num_nodes()) {
        throw std::invalid_argument("make_alpha_plan: stack covers " + std::to_string(stack.levels.front().rows()) +
                                    " nodes, graph has " + std::to_string(g.num_nodes()));
    }
    AlphaPlan plan;
    plan.stack = stack;
    plan.num_nodes = g.num_nodes();
    SparseMatrix a = sparse_adjacency(g);
    for (std::size_t t = 0; t <= stack.depth(); ++t) {
        plan.a_hat.push_back(std::make_shared<const SparseMatrix>(normalize_adjacency(a)));
        if (t < stack.depth()) a = pool_adjacency(a, stack.levels[t]);
    }
    return plan;
}

void add_alpha_params(ad::ParamStore& store, std::size_t in_dim, std::size_t k, std::size_t hidden, Rng& rng) {
    for (std::size_t t = 0; t < k; ++t) {
        store.add(alpha_name("up", t), t == 0 ? in_dim : hidden, hidden, ad::Init::Uniform, rng);
        store.add(alpha_name("down", t), hidden, hidden, ad::Init::Uniform, rng);
    }
}

ad::Tensor2 encode_alpha(const AlphaPlan& plan, const ad::Tensor2& x, ad::ParamStore& store,
                         const EncoderOptions& opt, std::uint64_t seed) {
    const std::size_t k = plan.stack.depth();
    if (x.rows() != plan.num_nodes) {
        throw std::invalid_argument("encode_alpha: features have " + std::to_string(x.rows()) + " rows, graph has " +
                                    std::to_string(plan.num_nodes) + " nodes");
    }
    std::uint64_t layer = 0;
    std::vector<ad::Tensor2> up(k);
    ad::Tensor2 h = x;
    for (std::size_t t = 0; t < k; ++t) {
        up[t] = ad::dropout(gcn_propagate(plan.a_hat[t], h, param(x, store, alpha_name("up", t))), opt.dropout,
                            mix_seed(seed, {layer++}));
        h = ad::pool_rows(up[t], plan.stack.levels[t]);
    }
    for (std::size_t t = k; t-- > 0;) {
        ad::Tensor2 d = gcn_propagate(plan.a_hat[t + 1], h, param(x, store, alpha_name("down", t)));
        if (t > 0) d = ad::dropout(d, opt.dropout, mix_seed(seed, {layer++}));
        h = ad::unpool_rows(d, plan.stack.levels[t]);
        if (opt.alpha_skip) h = ad::add(h, up[t]);
    }
    return h;
}

ad::Tensor2 encode_alpha(const graph::SimpleGraph& g, const tree::AssignmentStack& stack, const ad::Tensor2& x,
                         ad::ParamStore& store, const EncoderOptions& opt, std::uint64_t seed) {
    return encode_alpha(make_alpha_plan(g, stack), x, store, opt, seed);
}

BetaPlan make_beta_plan(const std::vector<graph::EgoSubgraph>& subs, const std::vector<tree::EncodingTree>& trees) {
    if (subs.size() != trees.size()) throw std::invalid_argument("make_beta_plan: subgraph/tree count mismatch");
    if (subs.empty()) throw std::invalid_argument("make_beta_plan: no subgraphs");
    BetaPlan plan;
    plan.num_subgraphs = subs.size();
    std::vector<tree::AssignmentStack> stacks;
    stacks.reserve(trees.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].graph.num_nodes() == 0) throw std::invalid_argument("make_beta_plan: empty subgraph");
        if (trees[i].num_leaves() != subs[i].graph.num_nodes()) {
            throw std::invalid_argument("make_beta_plan: tree does not match subgraph " + std::to_string(i));
        }
        stacks.push_back(tree::assignment_stack(trees[i]));
        if (i == 0) plan.depth = stacks[0].depth();
        if (stacks[i].depth() != plan.depth) throw std::invalid_argument("make_beta_plan: trees differ in depth");
        plan.gather.insert(plan.gather.end(), subs[i].to_global.begin(), subs[i].to_global.end());
    }

    std::vector<SparseMatrix> adj;
    adj.reserve(subs.size());
    for (const auto& s : subs) adj.push_back(sparse_adjacency(s.graph));
    for (std::size_t t = 0; t < plan.depth; ++t) {
        std::vector<SparseMatrix> norm;
        norm.reserve(adj.size());
        tree::Assignment pool, owner;
        std::vector<double> inv;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            const tree::Assignment& s = stacks[i].levels[t];
            norm.push_back(normalize_adjacency(adj[i]));
            for (std::size_t c : s.cluster_of) pool.cluster_of.push_back(pool.num_clusters + c);
            pool.num_clusters += s.num_clusters;
            owner.cluster_of.insert(owner.cluster_of.end(), s.num_clusters, i);
            inv.push_back(1.0 / static_cast<double>(s.num_clusters));
            adj[i] = pool_adjacency(adj[i], s);
        }
        owner.num_clusters = subs.size();
        plan.a_hat.push_back(std::make_shared<const SparseMatrix>(block_diagonal(norm)));
        plan.pool.push_back(std::move(pool));
        plan.owner.push_back(std::move(owner));
        plan.inv_clusters.push_back(std::move(inv));
    }
    return plan;
}

void add_beta_params(ad::ParamStore& store, std::size_t in_dim, std::size_t k, std::size_t hidden, Rng& rng) {
    for (std::size_t t = 0; t < k; ++t) store.add(beta_name(t), t == 0 ? in_dim : hidden, hidden, ad::Init::Uniform, rng);
}

ad::Tensor2 encode_beta(const BetaPlan& plan, const ad::Tensor2& x, ad::ParamStore& store,
                        const EncoderOptions& opt, std::uint64_t seed) {
    std::vector<ad::Tensor2> readouts;
    ad::Tensor2 h;
    for (std::size_t t = 0; t < plan.depth; ++t) {
        const ad::Tensor2 w = param(x, store, beta_name(t));
        ad::Tensor2 z;
        if (t == 0) {
            // Rows repeat across overlapping subgraphs; transform once, then gather.
            z = ad::relu(ad::spmm(plan.a_hat[0], ad::gather_rows(ad::matmul(x, w), plan.gather)));
        } else {
            z = gcn_propagate(plan.a_hat[t], h, w);
        }
        z = ad::dropout(z, opt.dropout, mix_seed(seed, {t}));
        h = ad::pool_rows(z, plan.pool[t]);
        ad::Tensor2 r = ad::pool_rows(h, plan.owner[t]);
        if (opt.readout == Readout::Mean) r = ad::scale_rows(r, plan.inv_clusters[t]);
        readouts.push_back(r);
    }
    return ad::concat_cols(readouts);
}

ad::Tensor2 encode_beta(const graph::EgoSubgraph& sub, const tree::EncodingTree& tree, const ad::Tensor2& x_sub,
                        ad::ParamStore& store, const EncoderOptions& opt, std::uint64_t seed) {
    BetaPlan plan = make_beta_plan({sub}, {tree});
    if (x_sub.rows() != sub.graph.num_nodes()) {
        throw std::invalid_argument("encode_beta: features have " + std::to_string(x_sub.rows()) +
                                    " rows, subgraph has " + std::to_string(sub.graph.num_nodes()) + " nodes");
    }
    std::iota(plan.gather.begin(), plan.gather.end(), std::size_t{0});
    return encode_beta(plan, x_sub, store, opt, seed);
}

}  // namespace sebot::pool
