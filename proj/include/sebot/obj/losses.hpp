#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sebot/ad/param_store.hpp"
#include "sebot/ad/tape.hpp"

namespace sebot::obj {

struct LossWeights {
    double lambda1 = 0.09;
    double lambda2 = 0.03;
    double tau = 0.1;
};

enum class Reduction { Sum, Mean };

/// Cross-view contrastive loss with cosine similarity. For anchor i of view
/// a the positive is row i of view b; the denominator holds the positive,
/// the other rows of view b and the other rows of view a. Both directions
/// are summed; Mean divides the total by 2n.
ad::Tensor2 info_nce(const ad::Tensor2& za, const ad::Tensor2& zb, double tau, Reduction red = Reduction::Sum);

/// Two affine maps with a relu between: width in -> out -> out.
/// Parameters <prefix>.W1, .b1, .W2, .b2.
struct ProjectionHead {
    std::string prefix;

    static ProjectionHead create(ad::ParamStore& store, std::string prefix, std::size_t in, std::size_t out, Rng& rng);
    ad::Tensor2 operator()(const ad::Tensor2& h, ad::ParamStore& store) const;
};

/// Classification head: relu(h W1 + b1), dropout, then W2 + b2 to two
/// classes. Parameters cls.W1, cls.b1, cls.W2, cls.b2.
void add_classifier_params(ad::ParamStore& store, std::size_t in, std::size_t hidden, Rng& rng);

/// Row-wise log class probabilities (columns: human, bot).
ad::Tensor2 classifier_log_probs(const ad::Tensor2& h, ad::ParamStore& store, double dropout, std::uint64_t seed);

struct Classification {
    ad::Tensor2 loss;       // 1 x 1 mean negative log likelihood
    ad::Tensor2 log_probs;  // rows of h, 2 columns
};

/// Mean binary cross-entropy of the head over the rows of `h`, which must be
/// the training nodes only; labels are 0 (human) or 1 (bot).
Classification bce_classify(const ad::Tensor2& h, const std::vector<int>& labels, ad::ParamStore& store,
                            double dropout = 0.0, std::uint64_t seed = 0);

/// Mean negative log likelihood of `log_probs` rows `rows` under `labels`.
ad::Tensor2 nll_rows(const ad::Tensor2& log_probs, const std::vector<std::size_t>& rows,
                     const std::vector<int>& labels);

/// ce + lambda1 * ncl + lambda2 * scl; absent terms are skipped.
ad::Tensor2 total_loss(const ad::Tensor2& ce, const std::optional<ad::Tensor2>& ncl,
                       const std::optional<ad::Tensor2>& scl, const LossWeights& w);

}  // namespace sebot::obj
