#include "sebot/ad/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sebot::ad {
namespace {

double evaluate(const LossFn& f, bool training) {
    Tape tape(training);
    return f(tape).item();
}

}  // namespace

GradcheckResult gradcheck(const LossFn& f, ParamStore& store, const GradcheckOptions& opts) {
    std::vector<std::string> names = opts.params.empty() ? store.names() : opts.params;

    store.zero_grad();
    {
        Tape tape(opts.training);
        tape.backward(f(tape));
    }
    std::map<std::string, Matrix> analytic;
    for (const auto& name : names) analytic.emplace(name, store.get(name).grad);
    store.zero_grad();

    GradcheckResult res;
    for (const auto& name : names) {
        Parameter& p = store.get(name);
        const Matrix& ga = analytic.at(name);
        for (std::size_t i = 0; i < p.value.size(); ++i) {
            const double orig = p.value.data()[i];
            p.value.data()[i] = orig + opts.step;
            const double up = evaluate(f, opts.training);
            p.value.data()[i] = orig - opts.step;
            const double down = evaluate(f, opts.training);
            p.value.data()[i] = orig;
            const double num = (up - down) / (2.0 * opts.step);
            const double a = ga.data()[i];
            const double denom = std::max({std::abs(a), std::abs(num), opts.floor});
            const double err = std::abs(a - num) / denom;
            ++res.entries_checked;
            if (err > res.max_rel_error || std::isnan(err)) {
                res.max_rel_error = std::isnan(err) ? INFINITY : err;
                res.worst_param = name;
                res.worst_index = i;
                res.analytic = a;
                res.numeric = num;
            }
        }
    }
    return res;
}

}  // namespace sebot::ad
