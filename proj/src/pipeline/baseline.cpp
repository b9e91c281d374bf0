#include "sebot/pipeline/baseline.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "sebot/ad/ops.hpp"
#include "sebot/ad/param_store.hpp"
#include "sebot/core/random.hpp"
#include "sebot/core/sparse.hpp"
#include "sebot/graph/views.hpp"
#include "sebot/obj/losses.hpp"
#include "sebot/pipeline/train.hpp"
#include "sebot/pool/gcn.hpp"

namespace sebot::pipeline {
namespace {

constexpr std::uint64_t kBaselineStream = 0x67636eULL;

struct Gcn {
    std::shared_ptr<const SparseMatrix> a_hat;
    Matrix x;
    ad::ParamStore store;
    double dropout = 0.5;

    ad::Tensor2 forward(ad::Tape& tape, std::uint64_t seed) {
        using namespace ad;
        Tensor2 h = dropout_layer(tape.constant(x), seed, 0);
        h = relu(add_row_broadcast(spmm(a_hat, matmul(h, tape.param(store.get("gcn.0.W")))),
                                   tape.param(store.get("gcn.0.b"))));
        h = dropout_layer(h, seed, 1);
        h = add_row_broadcast(spmm(a_hat, matmul(h, tape.param(store.get("gcn.1.W")))),
                              tape.param(store.get("gcn.1.b")));
        return log_softmax_rows(h);
    }

    ad::Tensor2 dropout_layer(const ad::Tensor2& h, std::uint64_t seed, std::uint64_t layer) const {
        return ad::dropout(h, dropout, mix_seed(seed, {layer}));
    }
};

MetricsReport score(const Matrix& lp, const graph::MultiRelGraph& g, const std::vector<graph::NodeId>& rows) {
    std::vector<int> pred, truth;
    for (graph::NodeId v : rows) {
        pred.push_back(lp(v, 1) > lp(v, 0) ? 1 : 0);
        truth.push_back(static_cast<int>(g.label(v)));
    }
    return compute_metrics(pred, truth);
}

}  // namespace

MetricsReport train_gcn_baseline(const graph::MultiRelGraph& g, const TrainConfig& cfg) {
    cfg.validate();
    const graph::SimpleGraph und = graph::collapse_to_undirected(g);
    Gcn net;
    net.a_hat = std::make_shared<const SparseMatrix>(
        pool::normalize_adjacency(SparseMatrix::from_dense(und.adjacency_matrix())));
    net.x = g.features();
    net.dropout = cfg.dropout;
    Rng rng(mix_seed(cfg.seed, {kBaselineStream}));
    net.store.add("gcn.0.W", g.feature_dim(), cfg.hidden, ad::Init::Uniform, rng);
    net.store.add("gcn.0.b", 1, cfg.hidden, ad::Init::Zeros, rng);
    net.store.add("gcn.1.W", cfg.hidden, 2, ad::Init::Uniform, rng);
    net.store.add("gcn.1.b", 1, 2, ad::Init::Zeros, rng);

    const std::vector<std::size_t> rows = training_rows(g, cfg);
    const std::vector<int> labels = labels_of(g, rows);
    labels_of(g, g.splits().val);
    labels_of(g, g.splits().test);
    const ad::AdamWConfig adam{cfg.lr, cfg.weight_decay};

    double best_val = -1.0;
    MetricsReport best;
    std::vector<double> loss_trace, val_trace;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        ad::Tape tape(true);
        const ad::Tensor2 loss = obj::nll_rows(net.forward(tape, mix_seed(cfg.seed, {kBaselineStream, epoch})), rows,
                                               labels);
        if (!std::isfinite(loss.item())) {
            throw std::runtime_error("baseline: loss became non-finite at epoch " + std::to_string(epoch));
        }
        tape.backward(loss);
        ad::adamw_step(net.store, adam);
        loss_trace.push_back(loss.item());

        ad::Tape eval(false);
        const Matrix lp = net.forward(eval, 0).value();
        const MetricsReport val = score(lp, g, g.splits().val);
        val_trace.push_back(val.accuracy);
        if (val.accuracy > best_val) {
            best_val = val.accuracy;
            best = score(lp, g, g.splits().test);
            best.best_epoch = epoch;
        }
    }
    best.loss_trace = std::move(loss_trace);
    best.val_accuracy_trace = std::move(val_trace);
    return best;
}

}  // namespace sebot::pipeline
