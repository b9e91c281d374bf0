#include "sebot/pipeline/model.hpp"

#include <algorithm>
#include <numeric>

#include "sebot/ad/ops.hpp"
#include "sebot/core/random.hpp"

namespace sebot::pipeline {
namespace {

constexpr std::uint64_t kInitStream = 0x696e6974ULL;
enum : std::uint64_t { kAlpha = 1, kBeta, kGamma, kHead, kBatch };

}  // namespace

SeBotModel::SeBotModel(const graph::MultiRelGraph& g, const Views& views, const TrainConfig& cfg)
    : cfg_(cfg), num_nodes_(g.num_nodes()), x_(g.features()), x_gamma_(views.gamma.front().features()) {
    cfg_.validate();
    gamma_edges_ = rel::RelationalEdges::from_graph(views.gamma.front());
    enc_opt_.hidden_dim = cfg.hidden;
    enc_opt_.dropout = cfg.dropout;
    enc_opt_.alpha_skip = cfg.alpha_skip;
    enc_opt_.readout = cfg.readout;
    rel_opt_.hidden_dim = cfg.hidden;
    rel_opt_.layers = cfg.layers;
    rel_opt_.tau_g = cfg.tau_g;
    rel_opt_.dropout = cfg.dropout;
    rel_opt_.use_rcm = !(cfg.no_rcm || cfg.rgcn_encoder);
    rel_opt_.signed_weights = !cfg.rgcn_encoder;

    Rng rng(mix_seed(cfg.seed, {kInitStream}));
    const std::size_t d_in = g.feature_dim();
    const std::size_t d = cfg.hidden;
    if (!cfg.no_alpha) {
        alpha_.emplace(pool::make_alpha_plan(*views.alpha_graph, views.alpha_stack));
        pool::add_alpha_params(store_, d_in, alpha_->stack.depth(), d, rng);
        psi_n_ = obj::ProjectionHead::create(store_, "psi_n", d, d, rng);
    }
    if (!cfg.no_beta) {
        beta_.emplace(pool::make_beta_plan(views.subgraphs, views.beta_trees));
        pool::add_beta_params(store_, d_in, beta_->depth, d, rng);
        store_.add("beta.proj.W", beta_->depth * d, d, ad::Init::Uniform, rng);
        store_.add("beta.proj.b", 1, d, ad::Init::Zeros, rng);
        psi_s_ = obj::ProjectionHead::create(store_, "psi_s", d, d, rng);
    }
    rel::add_rel_params(store_, d_in, gamma_edges_.num_relations(), rel_opt_, rng);
    obj::add_classifier_params(store_, classifier_input_width(), d, rng);
}

std::size_t SeBotModel::classifier_input_width() const { return cfg_.num_views() * cfg_.hidden; }

ForwardOutput SeBotModel::forward(ad::Tape& tape, std::uint64_t seed, std::vector<rel::EdgeWeightReport>* reports) {
    ForwardOutput out;
    const ad::Tensor2 x = tape.constant(x_);
    std::vector<ad::Tensor2> parts;
    if (alpha_) {
        out.h_alpha = pool::encode_alpha(*alpha_, x, store_, enc_opt_, mix_seed(seed, {kAlpha}));
        parts.push_back(*out.h_alpha);
    }
    if (beta_) {
        const ad::Tensor2 raw = pool::encode_beta(*beta_, x, store_, enc_opt_, mix_seed(seed, {kBeta}));
        out.h_beta = ad::add_row_broadcast(ad::matmul(raw, tape.param(store_.get("beta.proj.W"))),
                                           tape.param(store_.get("beta.proj.b")));
        parts.push_back(*out.h_beta);
    }
    const ad::Tensor2 xg = x_gamma_ == x_ ? x : tape.constant(x_gamma_);
    out.h_gamma = rel::encode_gamma(gamma_edges_, xg, store_, rel_opt_, mix_seed(seed, {kGamma}), reports);
    parts.push_back(out.h_gamma);
    out.h = parts.size() == 1 ? parts.front() : ad::concat_cols(parts);
    out.log_probs = obj::classifier_log_probs(out.h, store_, cfg_.dropout, mix_seed(seed, {kHead}));
    return out;
}

ad::Tensor2 SeBotModel::loss(const ForwardOutput& out, const std::vector<std::size_t>& rows,
                             const std::vector<int>& labels, std::uint64_t seed) {
    const ad::Tensor2 ce = obj::nll_rows(out.log_probs, rows, labels);
    std::vector<std::size_t> batch(num_nodes_);
    std::iota(batch.begin(), batch.end(), std::size_t{0});
    if (batch.size() > cfg_.contrastive_batch) {
        Rng rng(mix_seed(seed, {kBatch}));
        std::shuffle(batch.begin(), batch.end(), rng);
        batch.resize(cfg_.contrastive_batch);
        std::sort(batch.begin(), batch.end());
    }
    std::optional<ad::Tensor2> ncl, scl;
    const bool contrast = num_nodes_ >= 2;
    if (contrast && out.h_alpha && cfg_.lambda1 > 0.0) {
        ncl = obj::info_nce(psi_n_(ad::gather_rows(*out.h_alpha, batch), store_),
                            psi_n_(ad::gather_rows(out.h_gamma, batch), store_), cfg_.tau, obj::Reduction::Mean);
    }
    if (contrast && out.h_beta && cfg_.lambda2 > 0.0) {
        scl = obj::info_nce(psi_s_(ad::gather_rows(*out.h_beta, batch), store_),
                            psi_s_(ad::gather_rows(out.h_gamma, batch), store_), cfg_.tau, obj::Reduction::Mean);
    }
    return obj::total_loss(ce, ncl, scl, {cfg_.lambda1, cfg_.lambda2, cfg_.tau});
}

std::vector<int> SeBotModel::predictions(const ForwardOutput& out) {
    const Matrix& lp = out.log_probs.value();
    std::vector<int> pred(lp.rows());
    for (std::size_t i = 0; i < lp.rows(); ++i) pred[i] = lp(i, 1) > lp(i, 0) ? 1 : 0;
    return pred;
}

}  // namespace sebot::pipeline
