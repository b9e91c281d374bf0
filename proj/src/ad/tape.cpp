#include "sebot/ad/tape.hpp"

#include <stdexcept>

#include "sebot/ad/param_store.hpp"
#include "sebot/simd/kernels.hpp"

namespace sebot::ad {

const Matrix& Tensor2::value() const { return tape_->value(id_); }

const Matrix& Tensor2::grad() const { return tape_->grad_or_empty(id_); }

double Tensor2::item() const {
    const Matrix& v = value();
    if (v.rows() != 1 || v.cols() != 1) throw std::invalid_argument("item: tensor is not 1x1, got " + v.shape_string());
    return v(0, 0);
}

Tensor2 Tape::constant(Matrix value) {
    records_.push_back(Record{std::move(value), {}, {}, {}, nullptr, false});
    return Tensor2(this, records_.size() - 1);
}

Tensor2 Tape::param(Parameter& p) {
    records_.push_back(Record{p.value, {}, {}, {}, &p, true});
    return Tensor2(this, records_.size() - 1);
}

Tensor2 Tape::record(Matrix value, std::vector<std::size_t> inputs, Backprop backprop) {
    bool needs = false;
    for (std::size_t in : inputs) needs = needs || records_.at(in).needs_grad;
    Record r{std::move(value), {}, std::move(inputs), {}, nullptr, needs};
    if (needs) r.backprop = std::move(backprop);
    records_.push_back(std::move(r));
    return Tensor2(this, records_.size() - 1);
}

Matrix& Tape::grad(std::size_t id) {
    Record& r = records_.at(id);
    if (r.grad.rows() != r.value.rows() || r.grad.cols() != r.value.cols()) {
        r.grad = Matrix(r.value.rows(), r.value.cols());
    }
    return r.grad;
}

void Tape::backward(const Tensor2& loss) {
    if (backward_done_) throw std::logic_error("backward: already run on this tape; call reset() first");
    if (loss.valid() && &loss.tape() != this) throw std::invalid_argument("backward: loss belongs to another tape");
    const Matrix& v = value(loss.id());
    if (v.rows() != 1 || v.cols() != 1) throw std::invalid_argument("backward: loss must be 1x1, got " + v.shape_string());
    backward_done_ = true;
    grad(loss.id())(0, 0) = 1.0;
    for (std::size_t id = loss.id() + 1; id-- > 0;) {
        Record& r = records_[id];
        if (!r.needs_grad || r.grad.empty()) continue;
        if (r.backprop) r.backprop(*this, id);
        if (r.param != nullptr) {
            Matrix& target = r.param->grad;
            if (target.rows() != r.grad.rows() || target.cols() != r.grad.cols()) {
                target = Matrix(r.grad.rows(), r.grad.cols());
            }
            simd::axpy(1.0, r.grad.data(), target.data());
        }
    }
}

void Tape::reset() {
    records_.clear();
    backward_done_ = false;
}

}  // namespace sebot::ad
