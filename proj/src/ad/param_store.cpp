#include "sebot/ad/param_store.hpp"

#include <cmath>
#include <stdexcept>

namespace sebot::ad {

Parameter& ParamStore::add(const std::string& name, std::size_t rows, std::size_t cols, Init init, Rng& rng) {
    Matrix value(rows, cols);
    if (init == Init::Uniform) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(rows, 1)));
        for (double& x : value.data()) x = (2.0 * uniform01(rng) - 1.0) * bound;
    }
    return add_value(name, std::move(value));
}

Parameter& ParamStore::add_value(const std::string& name, Matrix value) {
    if (params_.contains(name)) throw std::invalid_argument("ParamStore: duplicate parameter '" + name + "'");
    Parameter p;
    p.name = name;
    p.grad = Matrix(value.rows(), value.cols());
    p.first_moment = Matrix(value.rows(), value.cols());
    p.second_moment = Matrix(value.rows(), value.cols());
    p.value = std::move(value);
    return params_.emplace(name, std::move(p)).first->second;
}

Parameter& ParamStore::get(std::string_view name) {
    auto it = params_.find(name);
    if (it == params_.end()) throw std::out_of_range("ParamStore: unknown parameter '" + std::string(name) + "'");
    return it->second;
}

const Parameter& ParamStore::get(std::string_view name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw std::out_of_range("ParamStore: unknown parameter '" + std::string(name) + "'");
    return it->second;
}

std::size_t ParamStore::scalar_count() const {
    std::size_t n = 0;
    for (const auto& [_, p] : params_) n += p.value.size();
    return n;
}

std::vector<std::string> ParamStore::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : params_) out.push_back(name);
    return out;
}

void ParamStore::zero_grad() {
    for (auto& [_, p] : params_) p.grad.fill(0.0);
}

std::map<std::string, Matrix> ParamStore::snapshot() const {
    std::map<std::string, Matrix> out;
    for (const auto& [name, p] : params_) out.emplace(name, p.value);
    return out;
}

void ParamStore::restore(const std::map<std::string, Matrix>& values) {
    for (const auto& [name, v] : values) {
        Parameter& p = get(name);
        require_shape(p.value.rows() == v.rows() && p.value.cols() == v.cols(), "ParamStore::restore", p.value, v);
        p.value = v;
    }
}

void adamw_step(ParamStore& store, const AdamWConfig& cfg) {
    store.set_step_count(store.step_count() + 1);
    const double t = static_cast<double>(store.step_count());
    const double bias1 = 1.0 - std::pow(cfg.beta1, t);
    const double bias2 = 1.0 - std::pow(cfg.beta2, t);
    for (auto& [_, p] : store) {
        auto& x = p.value.data();
        const auto& g = p.grad.data();
        auto& m = p.first_moment.data();
        auto& v = p.second_moment.data();
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] *= 1.0 - cfg.lr * cfg.weight_decay;
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
            const double m_hat = m[i] / bias1;
            const double v_hat = v[i] / bias2;
            x[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
        }
    }
    store.zero_grad();
}

}  // namespace sebot::ad
