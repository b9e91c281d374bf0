#include "sebot/pipeline/prepare.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sebot/core/hash.hpp"
#include "sebot/core/random.hpp"
#include "sebot/data/dataset_io.hpp"
#include "sebot/tree/minimize.hpp"
#include "sebot/tree/tree_io.hpp"

namespace sebot::pipeline {
namespace {

namespace fs = std::filesystem;
constexpr std::uint64_t kGammaStream = 0x67616d6d61ULL;

nlohmann::json parents_json(const tree::EncodingTree& t) {
    nlohmann::json out = nlohmann::json::array();
    for (auto p : tree::parent_table(t)) out.push_back(p == tree::kNoNode ? -1 : static_cast<long long>(p));
    return out;
}

tree::EncodingTree tree_from_parents_json(std::shared_ptr<const graph::SimpleGraph> g, const nlohmann::json& j) {
    std::vector<tree::TreeNodeId> parents;
    parents.reserve(j.size());
    for (const auto& v : j) {
        const long long p = v.get<long long>();
        parents.push_back(p < 0 ? tree::kNoNode : static_cast<tree::TreeNodeId>(p));
    }
    return tree::EncodingTree::from_parents(std::move(g), parents);
}

// Runs f(i) for i in [0, n) on up to `threads` workers; results land in
// caller-owned slots so the outcome does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F f) {
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

graph::MultiRelGraph augment(const graph::MultiRelGraph& g, AugMode mode, double p, std::uint64_t seed) {
    switch (mode) {
        case AugMode::EdgeDrop: return graph::drop_edges(g, p, seed);
        case AugMode::FeatureMask: return graph::mask_feature_columns(g, p, seed);
        case AugMode::FeatureDrop: return graph::drop_feature_entries(g, p, seed);
        case AugMode::EdgeAdd: return graph::add_edges(g, p, seed);
    }
    throw std::invalid_argument("augment: unknown mode");
}

std::string view_cache_key(const std::string& dataset_hash, const TrainConfig& cfg) {
    Fnv1a h;
    h.update(dataset_hash);
    h.update_u64(cfg.k);
    h.update_u64(cfg.m);
    h.update_double(cfg.aug_p);
    h.update_u64(cfg.seed);
    h.update(to_string(cfg.aug_mode));
    return h.hex();
}

Views prepare_views(const graph::MultiRelGraph& g, const TrainConfig& cfg, const PrepareOptions& opt) {
    cfg.validate();
    Views v;
    v.alpha_graph = std::make_shared<const graph::SimpleGraph>(graph::collapse_to_undirected(g));
    const std::size_t n = g.num_nodes();
    v.subgraphs.reserve(n);
    for (graph::NodeId c = 0; c < n; ++c) v.subgraphs.push_back(graph::ego_subgraph(*v.alpha_graph, c, cfg.m));

    const std::uint64_t gamma_seed = mix_seed(cfg.seed, {kGammaStream});
    graph::MultiRelGraph gamma = augment(g, cfg.aug_mode, cfg.aug_p, gamma_seed);

    std::optional<fs::path> cache_file;
    if (opt.cache_dir) {
        v.cache_key = view_cache_key(data::dataset_hash(g), cfg);
        cache_file = *opt.cache_dir / ("views-" + v.cache_key + ".json");
    }

    if (cache_file && fs::exists(*cache_file)) {
        std::ifstream in(*cache_file);
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("key").get<std::string>() != v.cache_key) throw std::runtime_error("view cache key mismatch");
        v.alpha_tree.push_back(tree_from_parents_json(v.alpha_graph, j.at("alpha")));
        const auto& beta = j.at("beta");
        if (beta.size() != n) throw std::runtime_error("view cache: wrong subgraph count");
        for (std::size_t i = 0; i < n; ++i) {
            v.beta_trees.push_back(
                tree_from_parents_json(std::make_shared<const graph::SimpleGraph>(v.subgraphs[i].graph), beta[i]));
        }
        std::vector<graph::EdgeSet> rels;
        for (const auto& r : j.at("gamma")) {
            auto& es = rels.emplace_back();
            for (const auto& e : r) es.push_back({e.at(0).get<graph::NodeId>(), e.at(1).get<graph::NodeId>()});
        }
        v.gamma.push_back(gamma.with_relations(std::move(rels)));
        v.cache_hit = true;
    } else {
        v.alpha_tree.push_back(tree::build_encoding_tree(v.alpha_graph, cfg.k));
        std::vector<std::optional<tree::EncodingTree>> slots(n);
        parallel_for(n, opt.threads, [&](std::size_t i) {
            slots[i].emplace(
                tree::build_encoding_tree(std::make_shared<const graph::SimpleGraph>(v.subgraphs[i].graph), cfg.k));
        });
        v.beta_trees.reserve(n);
        for (auto& s : slots) v.beta_trees.push_back(std::move(*s));
        v.gamma.push_back(std::move(gamma));

        if (cache_file) {
            nlohmann::json j;
            j["key"] = v.cache_key;
            j["alpha"] = parents_json(v.alpha_tree.front());
            j["beta"] = nlohmann::json::array();
            for (const auto& t : v.beta_trees) j["beta"].push_back(parents_json(t));
            j["gamma"] = nlohmann::json::array();
            for (const auto& rel : v.gamma.front().relations()) {
                nlohmann::json r = nlohmann::json::array();
                for (const auto& e : rel) r.push_back({e.src, e.dst});
                j["gamma"].push_back(std::move(r));
            }
            fs::create_directories(*opt.cache_dir);
            const fs::path tmp = cache_file->string() + ".tmp";
            {
                std::ofstream out(tmp, std::ios::trunc);
                if (!out) throw std::runtime_error("cannot write view cache " + tmp.string());
                out << j.dump() << '\n';
            }
            fs::rename(tmp, *cache_file);
        }
    }
    v.alpha_stack = tree::assignment_stack(v.alpha_tree.front());
    return v;
}

}  // namespace sebot::pipeline
