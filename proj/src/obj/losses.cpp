#include "sebot/obj/losses.hpp"

#include <stdexcept>

#include "sebot/ad/ops.hpp"

namespace sebot::obj {

ad::Tensor2 info_nce(const ad::Tensor2& za, const ad::Tensor2& zb, double tau, Reduction red) {
    require_shape(za.rows() == zb.rows() && za.cols() == zb.cols(), "info_nce", za.value(), zb.value());
    const std::size_t n = za.rows();
    if (n < 2) throw std::invalid_argument("info_nce: needs at least 2 rows for negatives");
    if (!(tau > 0.0)) throw std::invalid_argument("info_nce: tau must be positive");
    ad::Tape& tape = za.tape();

    const ad::Tensor2 a = ad::row_l2_normalize(za);
    const ad::Tensor2 b = ad::row_l2_normalize(zb);
    const double inv_tau = 1.0 / tau;
    const ad::Tensor2 off_diag = tape.constant([n] {
        Matrix m(n, n, 1.0);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
        return m;
    }());
    const ad::Tensor2 diag = tape.constant(Matrix::identity(n));

    auto one_side = [&](const ad::Tensor2& x, const ad::Tensor2& y) {
        const ad::Tensor2 cross = ad::scale(ad::matmul_nt(x, y), inv_tau);
        const ad::Tensor2 intra = ad::scale(ad::matmul_nt(x, x), inv_tau);
        const ad::Tensor2 denom = ad::add(ad::row_sum(ad::exp(cross)), ad::row_sum(ad::hadamard(ad::exp(intra), off_diag)));
        const ad::Tensor2 positive = ad::row_sum(ad::hadamard(cross, diag));
        return ad::sum(ad::sub(ad::log(denom), positive));
    };
    ad::Tensor2 total = ad::add(one_side(a, b), one_side(b, a));
    if (red == Reduction::Mean) total = ad::scale(total, 1.0 / static_cast<double>(2 * n));
    return total;
}

ProjectionHead ProjectionHead::create(ad::ParamStore& store, std::string prefix, std::size_t in, std::size_t out,
                                      Rng& rng) {
    store.add(prefix + ".W1", in, out, ad::Init::Uniform, rng);
    store.add(prefix + ".b1", 1, out, ad::Init::Zeros, rng);
    store.add(prefix + ".W2", out, out, ad::Init::Uniform, rng);
    store.add(prefix + ".b2", 1, out, ad::Init::Zeros, rng);
    return ProjectionHead{std::move(prefix)};
}

ad::Tensor2 ProjectionHead::operator()(const ad::Tensor2& h, ad::ParamStore& store) const {
    ad::Tape& t = h.tape();
    auto p = [&](const char* s) { return t.param(store.get(prefix + s)); };
    const ad::Tensor2 z = ad::relu(ad::add_row_broadcast(ad::matmul(h, p(".W1")), p(".b1")));
    return ad::add_row_broadcast(ad::matmul(z, p(".W2")), p(".b2"));
}

void add_classifier_params(ad::ParamStore& store, std::size_t in, std::size_t hidden, Rng& rng) {
    store.add("cls.W1", in, hidden, ad::Init::Uniform, rng);
    store.add("cls.b1", 1, hidden, ad::Init::Zeros, rng);
    store.add("cls.W2", hidden, 2, ad::Init::Uniform, rng);
    store.add("cls.b2", 1, 2, ad::Init::Zeros, rng);
}

ad::Tensor2 classifier_log_probs(const ad::Tensor2& h, ad::ParamStore& store, double dropout, std::uint64_t seed) {
    ad::Tape& t = h.tape();
    auto p = [&](const char* s) { return t.param(store.get(s)); };
    ad::Tensor2 z = ad::relu(ad::add_row_broadcast(ad::matmul(h, p("cls.W1")), p("cls.b1")));
    z = ad::dropout(z, dropout, seed);
    return ad::log_softmax_rows(ad::add_row_broadcast(ad::matmul(z, p("cls.W2")), p("cls.b2")));
}

ad::Tensor2 nll_rows(const ad::Tensor2& log_probs, const std::vector<std::size_t>& rows,
                     const std::vector<int>& labels) {
    if (rows.empty()) throw std::invalid_argument("classification loss: empty training split");
    if (rows.size() != labels.size()) throw std::invalid_argument("classification loss: row/label count mismatch");
    std::vector<std::size_t> cls(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw std::invalid_argument("classification loss: label must be 0 or 1");
        cls[i] = static_cast<std::size_t>(labels[i]);
    }
    return ad::scale(ad::mean(ad::pick(ad::gather_rows(log_probs, rows), cls)), -1.0);
}

Classification bce_classify(const ad::Tensor2& h, const std::vector<int>& labels, ad::ParamStore& store,
                            double dropout, std::uint64_t seed) {
    if (h.rows() == 0) throw std::invalid_argument("bce_classify: empty training split");
    const ad::Tensor2 lp = classifier_log_probs(h, store, dropout, seed);
    std::vector<std::size_t> rows(h.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return {nll_rows(lp, rows, labels), lp};
}

ad::Tensor2 total_loss(const ad::Tensor2& ce, const std::optional<ad::Tensor2>& ncl,
                       const std::optional<ad::Tensor2>& scl, const LossWeights& w) {
    if (w.lambda1 < 0.0 || w.lambda2 < 0.0) throw std::invalid_argument("total_loss: loss weights must be nonnegative");
    ad::Tensor2 total = ce;
    if (ncl && w.lambda1 != 0.0) total = ad::add(total, ad::scale(*ncl, w.lambda1));
    if (scl && w.lambda2 != 0.0) total = ad::add(total, ad::scale(*scl, w.lambda2));
    return total;
}

}  // namespace sebot::obj
