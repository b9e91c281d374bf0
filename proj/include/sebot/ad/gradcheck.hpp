#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sebot/ad/param_store.hpp"
#include "sebot/ad/tape.hpp"

namespace sebot::ad {

/// Builds a scalar loss on the supplied tape. Must be
/// deterministic: the same parameter values give the same loss.
using LossFn = std::function<Tensor2(Tape&)>;

struct GradcheckResult {
    double max_rel_error = 0.0;
    std::string worst_param;
    std::size_t worst_index = 0;
    double analytic = 0.0;
    double numeric = 0.0;
    std::size_t entries_checked = 0;
};

struct GradcheckOptions {
    double step = 1e-5;
    // Relative error is |a - n| / max(|a|, |n|, floor).
    double floor = 1e-4;
    // Tape mode handed to the loss. Seeded dropout is deterministic, so
    // training mode is checkable too.
    bool training = false;
    // Restrict the check to these parameters; empty means all.
    std::vector<std::string> params;
};

/// Central finite differences against reverse accumulation for every entry
/// of the selected parameters. Parameter values are restored afterwards.
GradcheckResult gradcheck(const LossFn& f, ParamStore& store, const GradcheckOptions& opts = {});

}  // namespace sebot::ad
