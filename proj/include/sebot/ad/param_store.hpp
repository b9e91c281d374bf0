#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sebot/core/matrix.hpp"
#include "sebot/core/random.hpp"

namespace sebot::ad {

struct Parameter {
    std::string name;
    Matrix value;
    Matrix grad;
    Matrix first_moment;
    Matrix second_moment;
};

enum class Init {
    Uniform,  // U(-1/sqrt(fan_in), 1/sqrt(fan_in)), fan_in = rows
    Zeros,
};

/// Named trainable matrices plus optimizer state. Iteration order is by name,
/// which keeps updates and checkpoints deterministic.
class ParamStore {
public:
    Parameter& add(const std::string& name, std::size_t rows, std::size_t cols, Init init, Rng& rng);
    /// Registers an explicit value (tests, checkpoint loading).
    Parameter& add_value(const std::string& name, Matrix value);

    bool contains(std::string_view name) const { return params_.find(std::string(name)) != params_.end(); }
    Parameter& get(std::string_view name);
    const Parameter& get(std::string_view name) const;

    std::size_t size() const noexcept { return params_.size(); }
    std::size_t scalar_count() const;
    std::vector<std::string> names() const;

    auto begin() { return params_.begin(); }
    auto end() { return params_.end(); }
    auto begin() const { return params_.begin(); }
    auto end() const { return params_.end(); }

    void zero_grad();
    std::uint64_t step_count() const noexcept { return steps_; }
    void set_step_count(std::uint64_t s) noexcept { steps_ = s; }

    /// Copy of every parameter value, keyed by name.
    std::map<std::string, Matrix> snapshot() const;
    void restore(const std::map<std::string, Matrix>& values);

private:
    std::map<std::string, Parameter, std::less<>> params_;
    std::uint64_t steps_ = 0;
};

struct AdamWConfig {
    double lr = 0.01;
    double weight_decay = 3e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// Decoupled weight decay followed by a bias-corrected Adam update; clears
/// gradients afterwards.
void adamw_step(ParamStore& store, const AdamWConfig& cfg);

}  // namespace sebot::ad
