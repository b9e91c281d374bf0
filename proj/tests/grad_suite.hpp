#pragma once

// Finite-difference cases for every differentiable op and for the three
// encoders. Each case builds its own inputs from a seed (n <= 8) and returns
// the worst relative error over every checked entry.

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sebot/ad/gradcheck.hpp"
#include "sebot/ad/ops.hpp"
#include "sebot/graph/views.hpp"
#include "sebot/obj/losses.hpp"
#include "sebot/pool/encoders.hpp"
#include "sebot/rel/rel_encoder.hpp"
#include "sebot/tree/assignment.hpp"
#include "sebot/tree/minimize.hpp"
#include "support.hpp"

namespace sebot::testing {

struct GradCase {
    std::string name;
    std::function<ad::GradcheckResult(std::uint64_t seed)> run;
};

namespace detail {

using Unary = std::function<ad::Tensor2(const ad::Tensor2&)>;
using Binary = std::function<ad::Tensor2(const ad::Tensor2&, const ad::Tensor2&)>;

// sum(op(...) .* R) with a fixed random R makes every output entry matter.
inline ad::Tensor2 weighted_sum(const ad::Tensor2& y, std::uint64_t seed) {
    Rng rng(mix_seed(seed, {77}));
    const Matrix r = random_matrix(y.rows(), y.cols(), rng);
    return ad::sum(ad::hadamard(y, y.tape().constant(r)));
}

inline ad::GradcheckResult check_unary(std::uint64_t seed, std::size_t r, std::size_t c, const Unary& op,
                                       double lo = -1.0, double hi = 1.0, bool training = false) {
    Rng rng(seed);
    ad::ParamStore store;
    Matrix a(r, c);
    for (double& x : a.data()) x = lo + (hi - lo) * uniform01(rng);
    store.add_value("a", a);
    ad::GradcheckOptions opt;
    opt.training = training;
    return ad::gradcheck(
        [&](ad::Tape& t) { return weighted_sum(op(t.param(store.get("a"))), seed); }, store, opt);
}

inline ad::GradcheckResult check_binary(std::uint64_t seed, std::size_t ar, std::size_t ac, std::size_t br,
                                        std::size_t bc, const Binary& op) {
    Rng rng(seed);
    ad::ParamStore store;
    store.add_value("a", random_matrix(ar, ac, rng));
    store.add_value("b", random_matrix(br, bc, rng));
    return ad::gradcheck(
        [&](ad::Tape& t) {
            return weighted_sum(op(t.param(store.get("a")), t.param(store.get("b"))), seed);
        },
        store);
}

inline tree::Assignment random_assignment(std::size_t rows, std::size_t clusters, Rng& rng) {
    tree::Assignment s;
    s.num_clusters = clusters;
    s.cluster_of.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) s.cluster_of[i] = i < clusters ? i : rng() % clusters;
    std::shuffle(s.cluster_of.begin(), s.cluster_of.end(), rng);
    return s;
}

}  // namespace detail

inline std::vector<GradCase> op_gradient_cases() {
    using namespace detail;
    using ad::Tensor2;
    std::vector<GradCase> c;
    auto unary = [&](std::string name, std::size_t r, std::size_t cols, Unary op, double lo = -1.0, double hi = 1.0) {
        c.push_back({name, [=](std::uint64_t s) { return check_unary(s, r, cols, op, lo, hi); }});
    };
    auto binary = [&](std::string name, std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc, Binary op) {
        c.push_back({name, [=](std::uint64_t s) { return check_binary(s, ar, ac, br, bc, op); }});
    };
    binary("matmul", 5, 4, 4, 3, [](const Tensor2& a, const Tensor2& b) { return ad::matmul(a, b); });
    binary("matmul_nt", 5, 4, 3, 4, [](const Tensor2& a, const Tensor2& b) { return ad::matmul_nt(a, b); });
    binary("add", 4, 3, 4, 3, [](const Tensor2& a, const Tensor2& b) { return ad::add(a, b); });
    binary("sub", 4, 3, 4, 3, [](const Tensor2& a, const Tensor2& b) { return ad::sub(a, b); });
    binary("add_row_broadcast", 5, 3, 1, 3,
           [](const Tensor2& a, const Tensor2& b) { return ad::add_row_broadcast(a, b); });
    binary("hadamard", 4, 3, 4, 3, [](const Tensor2& a, const Tensor2& b) { return ad::hadamard(a, b); });
    binary("concat_cols", 4, 2, 4, 3,
           [](const Tensor2& a, const Tensor2& b) { return ad::concat_cols({a, b, a}); });
    binary("concat_rows", 2, 3, 4, 3, [](const Tensor2& a, const Tensor2& b) { return ad::concat_rows({a, b}); });
    unary("spmm", 6, 3, [](const Tensor2& a) {
        Rng rng(3);
        Matrix d = random_matrix(5, 6, rng);
        for (std::size_t i = 0; i < d.size(); i += 2) d.data()[i] = 0.0;
        return ad::spmm(std::make_shared<const SparseMatrix>(SparseMatrix::from_dense(d)), a);
    });
    unary("transpose", 4, 3, [](const Tensor2& a) { return ad::transpose(a); });
    unary("scale", 4, 3, [](const Tensor2& a) { return ad::scale(a, -1.7); });
    unary("add_scalar", 4, 3, [](const Tensor2& a) { return ad::add_scalar(a, 0.3); });
    unary("scale_rows", 4, 3, [](const Tensor2& a) { return ad::scale_rows(a, {0.5, -2.0, 0.0, 3.0}); });
    unary("slice_cols", 4, 5, [](const Tensor2& a) { return ad::slice_cols(a, 1, 3); });
    unary("row_softmax", 4, 5, [](const Tensor2& a) { return ad::row_softmax(a); }, -2.0, 2.0);
    unary("log_softmax_rows", 4, 5, [](const Tensor2& a) { return ad::log_softmax_rows(a); }, -2.0, 2.0);
    unary("logsumexp_rows", 4, 5, [](const Tensor2& a) { return ad::logsumexp_rows(a); }, -2.0, 2.0);
    unary("group_softmax", 4, 6, [](const Tensor2& a) { return ad::group_softmax(a, 3); }, -2.0, 2.0);
    unary("tanh", 4, 3, [](const Tensor2& a) { return ad::tanh(a); }, -2.0, 2.0);
    unary("relu", 4, 3, [](const Tensor2& a) { return ad::relu(a); });
    unary("sigmoid", 4, 3, [](const Tensor2& a) { return ad::sigmoid(a); }, -3.0, 3.0);
    unary("exp", 4, 3, [](const Tensor2& a) { return ad::exp(a); });
    unary("log", 4, 3, [](const Tensor2& a) { return ad::log(a); }, 0.5, 2.0);
    unary("row_l2_normalize", 4, 3, [](const Tensor2& a) { return ad::row_l2_normalize(a); });
    unary("sum", 4, 3, [](const Tensor2& a) { return ad::sum(a); });
    unary("mean", 4, 3, [](const Tensor2& a) { return ad::mean(a); });
    unary("row_sum", 4, 3, [](const Tensor2& a) { return ad::row_sum(a); });
    unary("sum_rows", 4, 3, [](const Tensor2& a) { return ad::sum_rows(a); });
    unary("mean_rows", 4, 3, [](const Tensor2& a) { return ad::mean_rows(a); });
    unary("gather_rows", 5, 3, [](const Tensor2& a) { return ad::gather_rows(a, {4, 0, 0, 2, 4, 4}); });
    unary("pick", 4, 3, [](const Tensor2& a) { return ad::pick(a, {2, 0, 1, 1}); });
    unary("pool_rows", 8, 3, [](const Tensor2& a) {
        Rng rng(5);
        return ad::pool_rows(a, random_assignment(8, 3, rng));
    });
    unary("unpool_rows", 3, 4, [](const Tensor2& a) {
        Rng rng(6);
        return ad::unpool_rows(a, random_assignment(8, 3, rng));
    });
    c.push_back({"dropout", [](std::uint64_t s) {
                     return check_unary(s, 6, 4, [s](const Tensor2& a) { return ad::dropout(a, 0.5, s); }, -1.0, 1.0,
                                        true);
                 }});
    binary("edge_aggregate", 6, 3, 5, 1, [](const Tensor2& h, const Tensor2& w) {
        return ad::edge_aggregate(h, w, {0, 1, 2, 3, 1}, {1, 2, 2, 0, 0}, 6);
    });
    c.push_back({"info_nce", [](std::uint64_t s) {
                     Rng rng(s);
                     ad::ParamStore store;
                     store.add_value("a", random_matrix(6, 4, rng));
                     store.add_value("b", random_matrix(6, 4, rng));
                     return ad::gradcheck(
                         [&](ad::Tape& t) {
                             return obj::info_nce(t.param(store.get("a")), t.param(store.get("b")), 0.5);
                         },
                         store);
                 }});
    c.push_back({"classifier_nll", [](std::uint64_t s) {
                     Rng rng(s);
                     ad::ParamStore store;
                     store.add_value("h", random_matrix(7, 5, rng));
                     obj::add_classifier_params(store, 5, 4, rng);
                     auto head = obj::ProjectionHead::create(store, "psi", 5, 3, rng);
                     // zero biases can leave a head row at exactly zero, where
                     // the normalization is not differentiable
                     for (const char* b : {"cls.b1", "cls.b2", "psi.b1", "psi.b2"})
                         store.get(b).value = random_matrix(1, store.get(b).value.cols(), rng);
                     return ad::gradcheck(
                         [&](ad::Tape& t) {
                             const Tensor2 h = t.param(store.get("h"));
                             const Tensor2 lp = obj::classifier_log_probs(h, store, 0.0, 0);
                             const Tensor2 ce = obj::nll_rows(lp, {0, 2, 3, 6}, {1, 0, 1, 0});
                             const Tensor2 z = head(h, store);
                             return obj::total_loss(ce, obj::info_nce(z, ad::scale(z, 0.5), 0.2), std::nullopt,
                                                    {0.3, 0.0, 0.2});
                         },
                         store);
                 }});
    return c;
}

inline std::vector<GradCase> encoder_gradient_cases() {
    std::vector<GradCase> c;
    c.push_back({"encode_alpha", [](std::uint64_t s) {
                     Rng rng(s);
                     const graph::SimpleGraph g = random_connected_graph(8, 0.3, rng);
                     auto gp = std::make_shared<const graph::SimpleGraph>(g);
                     const auto stack = tree::assignment_stack(tree::minimize_to_height(gp, 3));
                     ad::ParamStore store;
                     store.add_value("x", random_matrix(8, 3, rng));
                     pool::add_alpha_params(store, 3, 3, 4, rng);
                     const auto plan = pool::make_alpha_plan(g, stack);
                     pool::EncoderOptions opt;
                     opt.hidden_dim = 4;
                     return ad::gradcheck(
                         [&](ad::Tape& t) {
                             return detail::weighted_sum(
                                 pool::encode_alpha(plan, t.param(store.get("x")), store, opt, 1), s);
                         },
                         store);
                 }});
    c.push_back({"encode_beta", [](std::uint64_t s) {
                     Rng rng(s);
                     const graph::SimpleGraph g = random_connected_graph(7, 0.25, rng);
                     std::vector<graph::EgoSubgraph> subs;
                     std::vector<tree::EncodingTree> trees;
                     for (graph::NodeId v = 0; v < 7; ++v) {
                         subs.push_back(graph::ego_subgraph(g, v, 1));
                         trees.push_back(tree::build_encoding_tree(
                             std::make_shared<const graph::SimpleGraph>(subs.back().graph), 3));
                     }
                     ad::ParamStore store;
                     store.add_value("x", random_matrix(7, 3, rng));
                     pool::add_beta_params(store, 3, 3, 4, rng);
                     const auto plan = pool::make_beta_plan(subs, trees);
                     pool::EncoderOptions opt;
                     opt.hidden_dim = 4;
                     return ad::gradcheck(
                         [&](ad::Tape& t) {
                             return detail::weighted_sum(
                                 pool::encode_beta(plan, t.param(store.get("x")), store, opt, 1), s);
                         },
                         store);
                 }});
    for (double tau_g : {0.01, 1.0}) {
        c.push_back({"encode_gamma tau_g=" + std::to_string(tau_g), [tau_g](std::uint64_t s) {
                         Rng rng(s);
                         const graph::MultiRelGraph g = random_multirel(8, 2, 12, 3, rng);
                         const auto edges = rel::RelationalEdges::from_graph(g);
                         rel::RelEncoderOptions opt;
                         opt.hidden_dim = 4;
                         opt.tau_g = tau_g;
                         opt.force_noise = true;
                         ad::ParamStore store;
                         store.add_value("x", g.features());
                         rel::add_rel_params(store, 3, 2, opt, rng);
                         return ad::gradcheck(
                             [&](ad::Tape& t) {
                                 return detail::weighted_sum(
                                     rel::encode_gamma(edges, t.param(store.get("x")), store, opt, s), s);
                             },
                             store);
                     }});
    }
    return c;
}

}  // namespace sebot::testing
