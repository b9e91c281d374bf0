#include "sebot/rel/rel_encoder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sebot/ad/ops.hpp"
#include "sebot/core/random.hpp"

namespace sebot::rel {
namespace {

std::string layer_name(std::size_t l, const std::string& rest) { return "rel." + std::to_string(l) + "." + rest; }
std::string rel_name(std::size_t l, std::size_t r, const char* what) {
    return layer_name(l, std::to_string(r) + "." + what);
}

void check_tau(double tau_g) {
    if (!(tau_g > 0.0)) throw std::invalid_argument("tau_g must be positive, got " + std::to_string(tau_g));
}

}  // namespace

RelationalEdges RelationalEdges::from_graph(const graph::MultiRelGraph& g) {
    RelationalEdges e;
    e.num_nodes = g.num_nodes();
    for (const auto& rel : g.relations()) {
        auto& s = e.src.emplace_back();
        auto& d = e.dst.emplace_back();
        s.reserve(rel.size());
        d.reserve(rel.size());
        for (const auto& edge : rel) {
            s.push_back(edge.src);
            d.push_back(edge.dst);
        }
    }
    return e;
}

void add_rel_params(ad::ParamStore& store, std::size_t in_dim, std::size_t num_relations,
                    const RelEncoderOptions& opt, Rng& rng) {
    if (opt.layers == 0) throw std::invalid_argument("rel encoder needs at least one layer");
    if (num_relations == 0) throw std::invalid_argument("rel encoder needs at least one relation");
    const std::size_t d = opt.hidden_dim;
    store.add("rel.in.W", in_dim, d, ad::Init::Uniform, rng);
    store.add("rel.in.b", 1, d, ad::Init::Zeros, rng);
    for (std::size_t l = 0; l < opt.layers; ++l) {
        for (std::size_t r = 0; r < num_relations; ++r) {
            store.add(rel_name(l, r, "g"), 2 * d, 1, ad::Init::Uniform, rng);
            store.add(rel_name(l, r, "W"), d, d, ad::Init::Uniform, rng);
            store.add(rel_name(l, r, "mix"), num_relations * d, d, ad::Init::Uniform, rng);
        }
        store.add(layer_name(l, "root.W"), d, d, ad::Init::Uniform, rng);
    }
}

double edge_weight(std::span<const double> h_i, std::span<const double> h_j, std::span<const double> g,
                   double tau_g, double eps) {
    check_tau(tau_g);
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("edge_weight: eps must lie in (0, 1)");
    if (g.size() != h_i.size() + h_j.size()) throw std::invalid_argument("edge_weight: attention vector width mismatch");
    double logit = 0.0;
    for (std::size_t c = 0; c < h_i.size(); ++c) logit += g[c] * h_i[c];
    for (std::size_t c = 0; c < h_j.size(); ++c) logit += g[h_i.size() + c] * h_j[c];
    return std::tanh((logit + std::log(eps) - std::log1p(-eps)) / tau_g);
}

ad::Tensor2 edge_weights(const ad::Tensor2& h, const ad::Tensor2& g, const std::vector<std::size_t>& src,
                         const std::vector<std::size_t>& dst, double tau_g, const std::vector<double>& noise) {
    check_tau(tau_g);
    ad::Tensor2 pair = ad::concat_cols({ad::gather_rows(h, dst), ad::gather_rows(h, src)});
    ad::Tensor2 logit = ad::matmul(pair, g);
    if (!noise.empty()) {
        if (noise.size() != src.size()) throw std::invalid_argument("edge_weights: noise length mismatch");
        logit = ad::add(logit, h.tape().constant(Matrix(noise.size(), 1, noise)));
    }
    return ad::tanh(ad::scale(logit, 1.0 / tau_g));
}

ad::Tensor2 relational_aggregate(const ad::Tensor2& h, const std::vector<std::size_t>& src,
                                 const std::vector<std::size_t>& dst, const ad::Tensor2& omega,
                                 const ad::Tensor2& w_r) {
    return ad::edge_aggregate(ad::matmul(h, w_r), omega, src, dst, h.rows());
}

ad::Tensor2 rcm_weights(const std::vector<ad::Tensor2>& per_relation, const std::vector<ad::Tensor2>& mix) {
    if (per_relation.size() != mix.size() || per_relation.empty()) {
        throw std::invalid_argument("rcm_weights: need one mixing transform per relation");
    }
    ad::Tensor2 joined = ad::concat_cols(per_relation);
    std::vector<ad::Tensor2> logits;
    logits.reserve(mix.size());
    for (const auto& m : mix) logits.push_back(ad::matmul(joined, m));
    return ad::group_softmax(ad::concat_cols(logits), mix.size());
}

ad::Tensor2 rcm_mix(const std::vector<ad::Tensor2>& per_relation, const ad::Tensor2& h_prev,
                    const std::vector<ad::Tensor2>& mix, const ad::Tensor2& w_root) {
    if (per_relation.empty()) throw std::invalid_argument("rcm_mix: no relation embeddings");
    ad::Tensor2 out = ad::matmul(h_prev, w_root);
    for (const auto& hr : per_relation)
        require_shape(hr.rows() == out.rows() && hr.cols() == out.cols(), "rcm_mix", hr.value(), out.value());
    if (mix.empty()) {
        for (const auto& hr : per_relation) out = ad::add(out, hr);
        return out;
    }
    const std::size_t d = per_relation.front().cols();
    ad::Tensor2 u = rcm_weights(per_relation, mix);
    for (std::size_t r = 0; r < per_relation.size(); ++r)
        out = ad::add(out, ad::hadamard(per_relation[r], ad::slice_cols(u, r * d, d)));
    return out;
}

ad::Tensor2 encode_gamma(const RelationalEdges& edges, const ad::Tensor2& x, ad::ParamStore& store,
                         const RelEncoderOptions& opt, std::uint64_t seed, std::vector<EdgeWeightReport>* reports) {
    check_tau(opt.tau_g);
    if (x.rows() != edges.num_nodes) {
        throw std::invalid_argument("encode_gamma: features have " + std::to_string(x.rows()) + " rows, view has " +
                                    std::to_string(edges.num_nodes) + " nodes");
    }
    ad::Tape& tape = x.tape();
    auto p = [&](const std::string& name) { return tape.param(store.get(name)); };
    const std::size_t R = edges.num_relations();
    const bool noisy = tape.training() || opt.force_noise;

    ad::Tensor2 h = ad::add_row_broadcast(ad::matmul(x, p("rel.in.W")), p("rel.in.b"));
    if (reports) reports->clear();
    for (std::size_t l = 0; l < opt.layers; ++l) {
        std::vector<ad::Tensor2> per_relation, mix;
        EdgeWeightReport report{l, {}};
        for (std::size_t r = 0; r < R; ++r) {
            const auto& src = edges.src[r];
            const auto& dst = edges.dst[r];
            ad::Tensor2 omega;
            if (opt.signed_weights) {
                std::vector<double> noise;
                if (noisy) {
                    Rng rng(mix_seed(seed, {l, r}));
                    noise.resize(src.size());
                    for (double& z : noise) {
                        const double eps = uniform_open01(rng);
                        z = std::log(eps) - std::log1p(-eps);
                    }
                }
                omega = edge_weights(h, p(rel_name(l, r, "g")), src, dst, opt.tau_g, noise);
            } else {
                omega = tape.constant(Matrix(src.size(), 1, 1.0));
            }
            if (reports) {
                auto& list = report.relations.emplace_back();
                for (std::size_t e = 0; e < src.size(); ++e) list.push_back({src[e], dst[e], omega.value()(e, 0)});
            }
            per_relation.push_back(relational_aggregate(h, src, dst, omega, p(rel_name(l, r, "W"))));
            if (opt.use_rcm) mix.push_back(p(rel_name(l, r, "mix")));
        }
        if (reports) reports->push_back(std::move(report));
        h = rcm_mix(per_relation, h, mix, p(layer_name(l, "root.W")));
        if (l + 1 < opt.layers) h = ad::dropout(ad::relu(h), opt.dropout, mix_seed(seed, {0x6c61796572ULL, l}));
    }
    return h;
}

}  // namespace sebot::rel
