#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sebot/core/matrix.hpp"

namespace sebot::ad {

class Tape;
struct Parameter;

/// Handle to a matrix recorded on a Tape. Cheap to copy; only valid while the
/// tape is alive and not reset.
class Tensor2 {
public:
    Tensor2() = default;

    bool valid() const noexcept { return tape_ != nullptr; }
    Tape& tape() const noexcept { return *tape_; }
    std::size_t id() const noexcept { return id_; }

    const Matrix& value() const;
    /// Gradient after backward(); empty matrix if none was accumulated.
    const Matrix& grad() const;
    std::size_t rows() const { return value().rows(); }
    std::size_t cols() const { return value().cols(); }
    /// Scalar value of a 1x1 tensor.
    double item() const;

private:
    friend class Tape;
    Tensor2(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}
    Tape* tape_ = nullptr;
    std::size_t id_ = 0;
};

/// Reverse rule: reads grad(self) and accumulates into the inputs' grads.
using Backprop = std::function<void(Tape&, std::size_t self)>;

/// Linear record of a forward computation. Records are appended in
/// evaluation order, so reverse index order is a valid topological order.
class Tape {
public:
    explicit Tape(bool training = false) : training_(training) {}
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    bool training() const noexcept { return training_; }
    void set_training(bool on) noexcept { training_ = on; }

    /// Leaf that never receives a gradient.
    Tensor2 constant(Matrix value);
    /// Leaf bound to a parameter; backward() adds its gradient into p.grad.
    Tensor2 param(Parameter& p);
    /// Interior node. `backprop` may be empty when no input needs a gradient.
    Tensor2 record(Matrix value, std::vector<std::size_t> inputs, Backprop backprop);

    /// Reverse accumulation from a 1x1 loss. Rejected when the loss is not
    /// scalar or when called a second time before reset().
    void backward(const Tensor2& loss);

    /// Drops every record; all outstanding handles become invalid.
    void reset();

    std::size_t size() const noexcept { return records_.size(); }

    const Matrix& value(std::size_t id) const { return records_.at(id).value; }
    bool needs_grad(std::size_t id) const { return records_.at(id).needs_grad; }
    /// Gradient buffer of a record, allocated (zeros) on first access.
    Matrix& grad(std::size_t id);
    const Matrix& grad_or_empty(std::size_t id) const { return records_.at(id).grad; }

private:
    struct Record {
        Matrix value;
        Matrix grad;
        std::vector<std::size_t> inputs;
        Backprop backprop;
        Parameter* param = nullptr;
        bool needs_grad = false;
    };

    std::vector<Record> records_;
    bool training_ = false;
    bool backward_done_ = false;
};

}  // namespace sebot::ad
