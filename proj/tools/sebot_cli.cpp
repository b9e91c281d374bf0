#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sebot/data/dataset_io.hpp"
#include "sebot/data/synth.hpp"
#include "sebot/graph/views.hpp"
#include "sebot/pipeline/ablate.hpp"
#include "sebot/pipeline/bench.hpp"
#include "sebot/pipeline/train.hpp"
#include "sebot/simd/kernels.hpp"
#include "sebot/tree/minimize.hpp"
#include "sebot/tree/tree_io.hpp"

#ifndef SEBOT_VERSION
#define SEBOT_VERSION "dev"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sebot;

namespace {

std::string g_command_line;

void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << text;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

// Run manifest: enough to re-run the command and compare outputs.
struct Manifest {
    explicit Manifest(std::string cmd) : command(std::move(cmd)) {}

    std::string command;
    json config = json::object();
    std::optional<std::uint64_t> seed;
    std::string dataset_hash;
    json timings = json::object();
    std::vector<std::string> outputs;

    void write(const fs::path& dir) const {
        json j{{"command", command},
               {"argv", g_command_line},
               {"config", config},
               {"dataset_hash", dataset_hash},
               {"code_version", SEBOT_VERSION},
               {"kernels", std::string(simd::isa_name(simd::active().isa))},
               {"timings", timings},
               {"outputs", outputs}};
        j["seed"] = seed ? json(*seed) : json(nullptr);
        write_json(dir / "manifest.json", j);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every TrainConfig key as an optional flag. Unset flags leave the value
// from the config file (or the default) alone.
struct ConfigFlags {
    std::optional<std::string> config_file;
    std::optional<std::size_t> k, m, hidden, layers, epochs, contrastive_batch;
    std::optional<double> aug_p, lr, weight_decay, dropout, lambda1, lambda2, tau, tau_g, train_fraction;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> readout, aug_mode;
    std::optional<bool> alpha_skip;
    bool no_alpha = false, no_beta = false, no_rcm = false, rgcn_encoder = false;

    void add(CLI::App& app) {
        const pipeline::TrainConfig d;
        auto def = [](auto v) {
            std::ostringstream os;
            os << v;
            return " (default " + os.str() + ")";
        };
        app.add_option("--config", config_file, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
        app.add_option("--k", k, "encoding tree height" + def(d.k));
        app.add_option("--m", m, "ego subgraph order" + def(d.m));
        app.add_option("--aug-p", aug_p, "augmentation rate of the relational view" + def(d.aug_p));
        app.add_option("--hidden", hidden, "hidden width" + def(d.hidden));
        app.add_option("--layers", layers, "relational encoder layers" + def(d.layers));
        app.add_option("--lr", lr, "AdamW learning rate" + def(d.lr));
        app.add_option("--weight-decay", weight_decay, "AdamW decoupled weight decay" + def(d.weight_decay));
        app.add_option("--dropout", dropout, "dropout rate" + def(d.dropout));
        app.add_option("--lambda1", lambda1, "node-level contrastive weight" + def(d.lambda1));
        app.add_option("--lambda2", lambda2, "subgraph-level contrastive weight" + def(d.lambda2));
        app.add_option("--tau", tau, "contrastive temperature" + def(d.tau));
        app.add_option("--tau-g", tau_g, "edge weight temperature" + def(d.tau_g));
        app.add_option("--epochs", epochs, "training epochs" + def(d.epochs));
        app.add_option("--seed", seed, "run seed" + def(d.seed));
        app.add_option("--readout", readout, "subgraph readout, mean or sum (default mean)");
        app.add_option("--alpha-skip", alpha_skip, "skip connections in the unpooling path (default true)");
        app.add_option("--contrastive-batch", contrastive_batch,
                       "nodes sampled per epoch for contrastive terms" + def(d.contrastive_batch));
        app.add_option("--train-fraction", train_fraction, "fraction of the train split used" + def(d.train_fraction));
        app.add_flag("--no-alpha", no_alpha, "drop the whole-graph tree view");
        app.add_flag("--no-beta", no_beta, "drop the subgraph tree view");
        app.add_flag("--no-rcm", no_rcm, "replace channel mixing by plain summation");
        app.add_flag("--rgcn-encoder", rgcn_encoder, "unit edge weights and no channel mixing");
        app.add_option("--aug-mode", aug_mode,
                       "relational view augmentation: edge_drop, feature_mask, feature_drop, edge_add (default "
                       "edge_drop)");
    }

    pipeline::TrainConfig resolve() const {
        pipeline::TrainConfig c;
        if (config_file) {
            std::ifstream is(*config_file);
            json j;
            try {
                j = json::parse(is);
            } catch (const json::exception& e) {
                throw std::invalid_argument(*config_file + ": " + e.what());
            }
            c = pipeline::config_from_json(j, c);
        }
        auto set = [](auto& field, const auto& opt) {
            if (opt) field = *opt;
        };
        set(c.k, k);
        set(c.m, m);
        set(c.aug_p, aug_p);
        set(c.hidden, hidden);
        set(c.layers, layers);
        set(c.lr, lr);
        set(c.weight_decay, weight_decay);
        set(c.dropout, dropout);
        set(c.lambda1, lambda1);
        set(c.lambda2, lambda2);
        set(c.tau, tau);
        set(c.tau_g, tau_g);
        set(c.epochs, epochs);
        set(c.seed, seed);
        set(c.alpha_skip, alpha_skip);
        set(c.contrastive_batch, contrastive_batch);
        set(c.train_fraction, train_fraction);
        if (readout) c.readout = pipeline::readout_from_string(*readout);
        if (aug_mode) c.aug_mode = pipeline::aug_mode_from_string(*aug_mode);
        c.no_alpha = c.no_alpha || no_alpha;
        c.no_beta = c.no_beta || no_beta;
        c.no_rcm = c.no_rcm || no_rcm;
        c.rgcn_encoder = c.rgcn_encoder || rgcn_encoder;
        c.validate();
        return c;
    }
};

std::string metrics_csv(const pipeline::MetricsReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "accuracy,f1,recall,precision,tp,fp,fn,tn,best_epoch\n"
       << r.accuracy << ',' << r.f1 << ',' << r.recall << ',' << r.precision << ',' << r.true_pos << ','
       << r.false_pos << ',' << r.false_neg << ',' << r.true_neg << ',' << r.best_epoch << '\n';
    return os.str();
}

std::string matrix_csv(const Matrix& m) {
    std::ostringstream os;
    os.precision(17);
    os << "node";
    for (std::size_t c = 0; c < m.cols(); ++c) os << ",x" << c;
    os << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << i;
        for (std::size_t c = 0; c < m.cols(); ++c) os << ',' << m(i, c);
        os << '\n';
    }
    return os.str();
}

std::vector<std::size_t> parse_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) g_command_line += (i ? " " : "") + std::string(argv[i]);

    CLI::App app{"Structural-entropy social bot detection: data, trees, training, benchmarks"};
    app.require_subcommand(1);
    std::size_t threads = 1;
    app.add_option("--threads", threads, "worker cap for tree construction (default 1)")->check(CLI::PositiveNumber);

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "generate a synthetic hierarchical bot dataset");
    data::SynthSpec spec;
    std::size_t nodes = spec.num_nodes();
    std::string gen_out;
    gen->add_option("--out", gen_out, "dataset directory")->required();
    gen->add_option("--nodes", nodes, "node count, a multiple of the leaf community count")->capture_default_str();
    gen->add_option("--homophily", spec.homophily, "same-class edge fraction")->capture_default_str();
    gen->add_option("--seed", spec.seed, "generator seed")->capture_default_str();
    gen->add_option("--feature-dim", spec.feature_dim, "feature columns")->capture_default_str();
    gen->add_option("--separation", spec.class_separation, "class mean distance in noise sigmas")
        ->capture_default_str();
    gen->add_option("--relations", spec.num_relations, "relation count")->capture_default_str();

    // tree build
    auto* tree_cmd = app.add_subcommand("tree", "encoding tree utilities");
    tree_cmd->require_subcommand(1);
    auto* tree_build = tree_cmd->add_subcommand("build", "height-k tree of the collapsed dataset graph");
    std::string tree_in, tree_out;
    std::size_t tree_k = 6;
    tree_build->add_option("--input", tree_in, "dataset directory")->required()->check(CLI::ExistingDirectory);
    tree_build->add_option("--height", tree_k, "tree height k")->capture_default_str();
    tree_build->add_option("--out", tree_out, "output tree JSON")->required();

    // train
    auto* train_cmd = app.add_subcommand("train", "train the full model and report test metrics");
    std::string train_data, train_out = "runs/train";
    std::optional<std::string> cache_dir;
    bool verbose = false;
    ConfigFlags train_flags;
    train_cmd->add_option("--data", train_data, "dataset directory")->required()->check(CLI::ExistingDirectory);
    train_cmd->add_option("--out", train_out, "run directory")->capture_default_str();
    train_cmd->add_option("--cache", cache_dir, "view cache directory");
    train_cmd->add_flag("--verbose", verbose, "print per-epoch loss and validation accuracy");
    train_flags.add(*train_cmd);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a saved model on a split");
    std::string eval_ckpt, eval_data, eval_split = "test", eval_out = "runs/evaluate";
    eval_cmd->add_option("--checkpoint", eval_ckpt, "checkpoint stem, e.g. runs/train/model")->required();
    eval_cmd->add_option("--data", eval_data, "dataset directory")->required()->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--split", eval_split, "train, val or test")->capture_default_str();
    eval_cmd->add_option("--out", eval_out, "run directory")->capture_default_str();

    // ablate
    auto* abl_cmd = app.add_subcommand("ablate", "one run per ablation axis and seed");
    std::string abl_data, abl_out = "runs/ablate", abl_axes = "full,no_alpha,no_beta,no_rcm,rgcn_encoder", abl_seeds =
                                                                                                               "1,2,3,4,5";
    ConfigFlags abl_flags;
    abl_cmd->add_option("--data", abl_data, "dataset directory")->required()->check(CLI::ExistingDirectory);
    abl_cmd->add_option("--out", abl_out, "run directory")->capture_default_str();
    abl_cmd->add_option("--axes", abl_axes,
                        "comma list of full, no_alpha, no_beta, no_rcm, rgcn_encoder, feature_mask, feature_drop, "
                        "edge_add, gcn")
        ->capture_default_str();
    abl_cmd->add_option("--seeds", abl_seeds, "comma list of seeds")->capture_default_str();
    abl_flags.add(*abl_cmd);

    // bench-entropy
    auto* bench_cmd = app.add_subcommand("bench-entropy", "time tree construction across graph sizes");
    std::string bench_sizes = "1000,4000,16000,64000", bench_out = "runs/bench";
    std::size_t bench_k = 6, bench_repeats = 1;
    std::uint64_t bench_seed = 1;
    bench_cmd->add_option("--sizes", bench_sizes, "comma list of target edge counts")->capture_default_str();
    bench_cmd->add_option("--k", bench_k, "tree height")->capture_default_str();
    bench_cmd->add_option("--repeats", bench_repeats, "timings per size, best kept")->capture_default_str();
    bench_cmd->add_option("--seed", bench_seed, "graph seed")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "run directory")->capture_default_str();

    // exports
    auto* ew_cmd = app.add_subcommand("export-edge-weights", "evaluation-mode edge weights as CSV");
    std::string ew_ckpt, ew_data, ew_out = "runs/edge-weights";
    ew_cmd->add_option("--checkpoint", ew_ckpt, "checkpoint stem")->required();
    ew_cmd->add_option("--data", ew_data, "dataset directory")->required()->check(CLI::ExistingDirectory);
    ew_cmd->add_option("--out", ew_out, "run directory")->capture_default_str();

    auto* emb_cmd = app.add_subcommand("export-embeddings", "evaluation-mode view embeddings as CSV");
    std::string emb_ckpt, emb_data, emb_out = "runs/embeddings";
    emb_cmd->add_option("--checkpoint", emb_ckpt, "checkpoint stem")->required();
    emb_cmd->add_option("--data", emb_data, "dataset directory")->required()->check(CLI::ExistingDirectory);
    emb_cmd->add_option("--out", emb_out, "run directory")->capture_default_str();

    // convert
    auto* conv_cmd = app.add_subcommand("convert", "convert external dumps to the dataset layout");
    std::string conv_format = "edgelist", conv_out;
    data::EdgelistSource src;
    std::string conv_edges, conv_features;
    std::optional<std::string> conv_labels, conv_splits;
    conv_cmd->add_option("--format", conv_format, "input format (edgelist)")->capture_default_str();
    conv_cmd->add_option("--edges", conv_edges, "edge file: src dst [relation]")->required()->check(CLI::ExistingFile);
    conv_cmd->add_option("--features", conv_features, "feature rows")->required()->check(CLI::ExistingFile);
    conv_cmd->add_option("--labels", conv_labels, "node label lines")->check(CLI::ExistingFile);
    conv_cmd->add_option("--splits", conv_splits, "splits.json")->check(CLI::ExistingFile);
    conv_cmd->add_option("--train-fraction", src.train_fraction, "random split train share")->capture_default_str();
    conv_cmd->add_option("--val-fraction", src.val_fraction, "random split validation share")->capture_default_str();
    conv_cmd->add_option("--seed", src.seed, "random split seed")->capture_default_str();
    conv_cmd->add_option("--out", conv_out, "dataset directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        pipeline::PrepareOptions prep;
        prep.threads = threads;

        if (*gen) {
            const std::size_t leaves = spec.num_leaf_communities();
            if (nodes == 0 || nodes % leaves != 0) {
                throw std::invalid_argument("--nodes must be a positive multiple of " + std::to_string(leaves));
            }
            spec.nodes_per_leaf = nodes / leaves;
            const graph::MultiRelGraph g = data::generate(spec);
            data::save_dataset(g, gen_out);
            Manifest m{"gen-data"};
            m.config = {{"nodes", nodes},
                        {"homophily", spec.homophily},
                        {"measured_homophily", data::measure_homophily(g)},
                        {"feature_dim", spec.feature_dim},
                        {"separation", spec.class_separation},
                        {"relations", spec.num_relations}};
            m.seed = spec.seed;
            m.dataset_hash = data::dataset_hash(g);
            m.timings["total_seconds"] = seconds_since(t0);
            m.outputs = {"edges.csv", "features.csv", "labels.csv", "splits.json"};
            m.write(gen_out);
            std::cout << "wrote " << gen_out << " (" << g.num_nodes() << " nodes, " << g.num_edges() << " edges)\n";
        } else if (*tree_build) {
            const graph::MultiRelGraph g = data::load_dataset(tree_in);
            auto sg = std::make_shared<const graph::SimpleGraph>(graph::collapse_to_undirected(g));
            const tree::EncodingTree t = tree::build_encoding_tree(sg, tree_k);
            write_json(tree_out, tree::tree_to_json(t));
            std::cout << "height " << t.height() << " entropy " << t.entropy() << " bits\n";
        } else if (*train_cmd) {
            const pipeline::TrainConfig cfg = train_flags.resolve();
            const graph::MultiRelGraph g = data::load_dataset(train_data);
            if (cache_dir) prep.cache_dir = *cache_dir;
            const pipeline::Views views = pipeline::prepare_views(g, cfg, prep);
            const double view_seconds = seconds_since(t0);
            pipeline::TrainOptions opt;
            opt.prepare = prep;
            if (verbose) opt.log = &std::cerr;
            pipeline::TrainResult r = pipeline::train(g, views, cfg, opt);
            r.test.seconds_views = view_seconds;
            fs::create_directories(train_out);
            pipeline::save_model(train_out, r, g, views);
            json metrics = pipeline::to_json(r.test);
            metrics["val_accuracy"] = r.val.accuracy;
            write_json(fs::path(train_out) / "metrics.json", metrics);
            write_text(fs::path(train_out) / "metrics.csv", metrics_csv(r.test));
            Manifest m{"train"};
            m.config = pipeline::to_json(cfg);
            m.seed = cfg.seed;
            m.dataset_hash = data::dataset_hash(g);
            m.timings = {{"views_seconds", view_seconds}, {"train_seconds", r.test.seconds_train},
                         {"total_seconds", seconds_since(t0)}, {"view_cache_hit", views.cache_hit}};
            m.outputs = {"model.bin", "model.json", "metrics.json", "metrics.csv"};
            m.write(train_out);
            std::cout << pipeline::to_json(r.test, false).dump(2) << "\n";
        } else if (*eval_cmd) {
            const graph::MultiRelGraph g = data::load_dataset(eval_data);
            pipeline::LoadedModel lm = pipeline::load_model(eval_ckpt, g, prep);
            const pipeline::MetricsReport r = pipeline::evaluate_rows(*lm.model, g, pipeline::split_rows(g, eval_split));
            write_json(fs::path(eval_out) / "metrics.json", pipeline::to_json(r, false));
            write_text(fs::path(eval_out) / "metrics.csv", metrics_csv(r));
            Manifest m{"evaluate"};
            m.config = pipeline::to_json(lm.config);
            m.config["split"] = eval_split;
            m.config["checkpoint"] = eval_ckpt;
            m.seed = lm.config.seed;
            m.dataset_hash = data::dataset_hash(g);
            m.timings["total_seconds"] = seconds_since(t0);
            m.outputs = {"metrics.json", "metrics.csv"};
            m.write(eval_out);
            std::cout << pipeline::to_json(r, false).dump(2) << "\n";
        } else if (*abl_cmd) {
            const pipeline::TrainConfig cfg = abl_flags.resolve();
            const graph::MultiRelGraph g = data::load_dataset(abl_data);
            std::vector<std::uint64_t> seeds;
            for (std::size_t s : parse_list(abl_seeds)) seeds.push_back(s);
            const auto table = pipeline::ablate(g, cfg, split_names(abl_axes), seeds, prep);
            write_json(fs::path(abl_out) / "ablation.json", pipeline::to_json(table));
            write_text(fs::path(abl_out) / "ablation.csv", pipeline::to_csv(table));
            Manifest m{"ablate"};
            m.config = pipeline::to_json(cfg);
            m.config["axes"] = abl_axes;
            m.config["seeds"] = abl_seeds;
            m.dataset_hash = data::dataset_hash(g);
            m.timings["total_seconds"] = seconds_since(t0);
            m.outputs = {"ablation.json", "ablation.csv"};
            m.write(abl_out);
            for (const auto& row : table) {
                std::cout << row.axis << " mean_accuracy " << row.mean_accuracy() << " mean_f1 " << row.mean_f1()
                          << "\n";
            }
        } else if (*bench_cmd) {
            const auto points = pipeline::bench_entropy(parse_list(bench_sizes), bench_k, bench_seed, bench_repeats);
            const std::string csv = pipeline::to_csv(points);
            write_text(fs::path(bench_out) / "bench.csv", csv);
            std::cout << csv;
            Manifest m{"bench-entropy"};
            m.config = {{"sizes", bench_sizes}, {"k", bench_k}, {"repeats", bench_repeats}};
            m.seed = bench_seed;
            m.timings["total_seconds"] = seconds_since(t0);
            if (points.size() >= 2) {
                const double slope = pipeline::loglog_slope(points);
                m.timings["loglog_slope"] = slope;
                std::cout << "log-log slope " << slope << "\n";
            }
            m.outputs = {"bench.csv"};
            m.write(bench_out);
        } else if (*ew_cmd) {
            const graph::MultiRelGraph g = data::load_dataset(ew_data);
            pipeline::LoadedModel lm = pipeline::load_model(ew_ckpt, g, prep);
            const json w = pipeline::export_edge_weights(*lm.model);
            std::ostringstream os;
            os.precision(17);
            os << "layer,src,dst,relation,omega\n";
            for (const auto& layer : w.at("layers")) {
                const auto& rels = layer.at("relations");
                for (std::size_t r = 0; r < rels.size(); ++r) {
                    for (const auto& e : rels[r]) {
                        os << layer.at("layer").get<std::size_t>() << ',' << e.at("src").get<std::size_t>() << ','
                           << e.at("dst").get<std::size_t>() << ',' << r << ',' << e.at("omega").get<double>() << '\n';
                    }
                }
            }
            write_text(fs::path(ew_out) / "edge_weights.csv", os.str());
            Manifest m{"export-edge-weights"};
            m.config = pipeline::to_json(lm.config);
            m.config["checkpoint"] = ew_ckpt;
            m.seed = lm.config.seed;
            m.dataset_hash = data::dataset_hash(g);
            m.timings["total_seconds"] = seconds_since(t0);
            m.outputs = {"edge_weights.csv"};
            m.write(ew_out);
        } else if (*emb_cmd) {
            const graph::MultiRelGraph g = data::load_dataset(emb_data);
            pipeline::LoadedModel lm = pipeline::load_model(emb_ckpt, g, prep);
            Manifest m{"export-embeddings"};
            for (const auto& [name, mat] : pipeline::export_embeddings(*lm.model)) {
                write_text(fs::path(emb_out) / ("embeddings_" + name + ".csv"), matrix_csv(mat));
                m.outputs.push_back("embeddings_" + name + ".csv");
            }
            m.config = pipeline::to_json(lm.config);
            m.config["checkpoint"] = emb_ckpt;
            m.seed = lm.config.seed;
            m.dataset_hash = data::dataset_hash(g);
            m.timings["total_seconds"] = seconds_since(t0);
            m.write(emb_out);
        } else if (*conv_cmd) {
            if (conv_format != "edgelist") throw std::invalid_argument("unsupported --format '" + conv_format + "'");
            src.edges = conv_edges;
            src.features = conv_features;
            if (conv_labels) src.labels = fs::path(*conv_labels);
            if (conv_splits) src.splits = fs::path(*conv_splits);
            const graph::MultiRelGraph g = data::convert_edgelist(src);
            data::save_dataset(g, conv_out);
            Manifest m{"convert"};
            m.config = {{"format", conv_format}, {"edges", conv_edges}, {"features", conv_features}};
            m.seed = src.seed;
            m.dataset_hash = data::dataset_hash(g);
            m.timings["total_seconds"] = seconds_since(t0);
            m.outputs = {"edges.csv", "features.csv", "splits.json"};
            if (g.has_labels()) m.outputs.push_back("labels.csv");
            m.write(conv_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
