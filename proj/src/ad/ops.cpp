#include "sebot/ad/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sebot/core/random.hpp"
#include "sebot/simd/kernels.hpp"

namespace sebot::ad {
namespace {

Tape& same_tape(const Tensor2& a, const Tensor2& b, const char* op) {
    if (!a.valid() || !b.valid()) throw std::invalid_argument(std::string(op) + ": invalid tensor");
    if (&a.tape() != &b.tape()) throw std::invalid_argument(std::string(op) + ": operands on different tapes");
    return a.tape();
}

Tape& tape_of(const Tensor2& a, const char* op) {
    if (!a.valid()) throw std::invalid_argument(std::string(op) + ": invalid tensor");
    return a.tape();
}

// Gradient buffer of input `id`, or nullptr when it does not need one.
Matrix* grad_if(Tape& t, std::size_t id) { return t.needs_grad(id) ? &t.grad(id) : nullptr; }

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), op, a, b);
}

// Elementwise map with derivative expressed through input x and output y.
template <class F, class D>
Tensor2 unary(const Tensor2& a, const char* op, F f, D dfdx) {
    Tape& t = tape_of(a, op);
    const Matrix& x = a.value();
    Matrix y(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) y.data()[i] = f(x.data()[i]);
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, dfdx](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        const Matrix& xv = tp.value(ia);
        const Matrix& yv = tp.value(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.size(); ++i) ga.data()[i] += g.data()[i] * dfdx(xv.data()[i], yv.data()[i]);
    });
}

}  // namespace

Tensor2 matmul(const Tensor2& a, const Tensor2& b) {
    Tape& t = same_tape(a, b, "matmul");
    Matrix y = sebot::matmul(a.value(), b.value());
    const std::size_t ia = a.id(), ib = b.id();
    return t.record(std::move(y), {ia, ib}, [ia, ib](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        if (Matrix* ga = grad_if(tp, ia)) matmul_nt_acc(g, tp.value(ib), *ga);
        if (Matrix* gb = grad_if(tp, ib)) matmul_tn_acc(tp.value(ia), g, *gb);
    });
}

Tensor2 matmul_nt(const Tensor2& a, const Tensor2& b) {
    Tape& t = same_tape(a, b, "matmul_nt");
    Matrix y = sebot::matmul_nt(a.value(), b.value());
    const std::size_t ia = a.id(), ib = b.id();
    return t.record(std::move(y), {ia, ib}, [ia, ib](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        if (Matrix* ga = grad_if(tp, ia)) matmul_acc(g, tp.value(ib), *ga);
        if (Matrix* gb = grad_if(tp, ib)) matmul_tn_acc(g, tp.value(ia), *gb);
    });
}

Tensor2 spmm(std::shared_ptr<const SparseMatrix> a, const Tensor2& h) {
    Tape& t = tape_of(h, "spmm");
    Matrix y = sebot::spmm(*a, h.value());
    const std::size_t ih = h.id();
    return t.record(std::move(y), {ih}, [ih, a = std::move(a)](Tape& tp, std::size_t self) {
        spmm_tn_acc(*a, tp.grad(self), tp.grad(ih));
    });
}

Tensor2 transpose(const Tensor2& a) {
    Tape& t = tape_of(a, "transpose");
    const std::size_t ia = a.id();
    return t.record(sebot::transpose(a.value()), {ia}, [ia](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) ga(j, i) += g(i, j);
    });
}

Tensor2 add(const Tensor2& a, const Tensor2& b) {
    Tape& t = same_tape(a, b, "add");
    require_same_shape(a.value(), b.value(), "add");
    Matrix y = a.value();
    simd::axpy(1.0, b.value().data(), y.data());
    const std::size_t ia = a.id(), ib = b.id();
    return t.record(std::move(y), {ia, ib}, [ia, ib](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        if (Matrix* ga = grad_if(tp, ia)) simd::axpy(1.0, g.data(), ga->data());
        if (Matrix* gb = grad_if(tp, ib)) simd::axpy(1.0, g.data(), gb->data());
    });
}

Tensor2 sub(const Tensor2& a, const Tensor2& b) {
    Tape& t = same_tape(a, b, "sub");
    require_same_shape(a.value(), b.value(), "sub");
    Matrix y = a.value();
    simd::axpy(-1.0, b.value().data(), y.data());
    const std::size_t ia = a.id(), ib = b.id();
    return t.record(std::move(y), {ia, ib}, [ia, ib](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        if (Matrix* ga = grad_if(tp, ia)) simd::axpy(1.0, g.data(), ga->data());
        if (Matrix* gb = grad_if(tp, ib)) simd::axpy(-1.0, g.data(), gb->data());
    });
}

Tensor2 add_row_broadcast(const Tensor2& a, const Tensor2& row) {
    Tape& t = same_tape(a, row, "add_row_broadcast");
    const Matrix& x = a.value();
    const Matrix& r = row.value();
    require_shape(r.rows() == 1 && r.cols() == x.cols(), "add_row_broadcast", x, r);
    Matrix y = x;
    for (std::size_t i = 0; i < y.rows(); ++i) simd::axpy(1.0, r.row(0), y.row(i));
    const std::size_t ia = a.id(), ir = row.id();
    return t.record(std::move(y), {ia, ir}, [ia, ir](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        if (Matrix* ga = grad_if(tp, ia)) simd::axpy(1.0, g.data(), ga->data());
        if (Matrix* gr = grad_if(tp, ir))
            for (std::size_t i = 0; i < g.rows(); ++i) simd::axpy(1.0, g.row(i), gr->row(0));
    });
}

Tensor2 hadamard(const Tensor2& a, const Tensor2& b) {
    Tape& t = same_tape(a, b, "hadamard");
    require_same_shape(a.value(), b.value(), "hadamard");
    Matrix y(a.rows(), a.cols());
    simd::fma_accumulate(a.value().data(), b.value().data(), y.data());
    const std::size_t ia = a.id(), ib = b.id();
    return t.record(std::move(y), {ia, ib}, [ia, ib](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        if (Matrix* ga = grad_if(tp, ia)) simd::fma_accumulate(g.data(), tp.value(ib).data(), ga->data());
        if (Matrix* gb = grad_if(tp, ib)) simd::fma_accumulate(g.data(), tp.value(ia).data(), gb->data());
    });
}

Tensor2 scale(const Tensor2& a, double s) {
    Tape& t = tape_of(a, "scale");
    Matrix y = a.value();
    simd::scale(s, y.data());
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, s](Tape& tp, std::size_t self) {
        simd::axpy(s, tp.grad(self).data(), tp.grad(ia).data());
    });
}

Tensor2 add_scalar(const Tensor2& a, double s) {
    Tape& t = tape_of(a, "add_scalar");
    Matrix y = a.value();
    for (double& v : y.data()) v += s;
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia](Tape& tp, std::size_t self) {
        simd::axpy(1.0, tp.grad(self).data(), tp.grad(ia).data());
    });
}

Tensor2 scale_rows(const Tensor2& a, std::vector<double> factors) {
    Tape& t = tape_of(a, "scale_rows");
    if (factors.size() != a.rows()) {
        throw std::invalid_argument("scale_rows: " + std::to_string(factors.size()) + " factors for " +
                                    a.value().shape_string());
    }
    Matrix y = a.value();
    for (std::size_t i = 0; i < y.rows(); ++i) simd::scale(factors[i], y.row(i));
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, f = std::move(factors)](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) simd::axpy(f[i], g.row(i), ga.row(i));
    });
}

Tensor2 concat_cols(const std::vector<Tensor2>& parts) {
    if (parts.empty()) throw std::invalid_argument("concat_cols: no operands");
    Tape& t = tape_of(parts.front(), "concat_cols");
    const std::size_t rows = parts.front().rows();
    std::size_t cols = 0;
    std::vector<std::size_t> ids;
    for (const auto& p : parts) {
        same_tape(parts.front(), p, "concat_cols");
        require_shape(p.rows() == rows, "concat_cols", parts.front().value(), p.value());
        cols += p.cols();
        ids.push_back(p.id());
    }
    Matrix y(rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        const Matrix& v = p.value();
        for (std::size_t i = 0; i < rows; ++i) std::copy(v.row(i).begin(), v.row(i).end(), y.row(i).begin() + off);
        off += v.cols();
    }
    return t.record(std::move(y), ids, [ids](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        std::size_t o = 0;
        for (std::size_t id : ids) {
            const std::size_t c = tp.value(id).cols();
            if (Matrix* gi = grad_if(tp, id))
                for (std::size_t i = 0; i < g.rows(); ++i) simd::axpy(1.0, g.row(i).subspan(o, c), gi->row(i));
            o += c;
        }
    });
}

Tensor2 concat_rows(const std::vector<Tensor2>& parts) {
    if (parts.empty()) throw std::invalid_argument("concat_rows: no operands");
    Tape& t = tape_of(parts.front(), "concat_rows");
    const std::size_t cols = parts.front().cols();
    std::vector<std::size_t> ids;
    std::vector<double> data;
    std::size_t rows = 0;
    for (const auto& p : parts) {
        same_tape(parts.front(), p, "concat_rows");
        require_shape(p.cols() == cols, "concat_rows", parts.front().value(), p.value());
        data.insert(data.end(), p.value().data().begin(), p.value().data().end());
        rows += p.rows();
        ids.push_back(p.id());
    }
    return t.record(Matrix(rows, cols, std::move(data)), ids, [ids](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        std::size_t o = 0;
        for (std::size_t id : ids) {
            const std::size_t n = tp.value(id).size();
            if (Matrix* gi = grad_if(tp, id))
                simd::axpy(1.0, std::span<const double>(g.data()).subspan(o, n), gi->data());
            o += n;
        }
    });
}

Tensor2 slice_cols(const Tensor2& a, std::size_t begin, std::size_t count) {
    Tape& t = tape_of(a, "slice_cols");
    const Matrix& x = a.value();
    if (begin + count > x.cols()) {
        throw std::invalid_argument("slice_cols: columns [" + std::to_string(begin) + ", " +
                                    std::to_string(begin + count) + ") out of range for " + x.shape_string());
    }
    Matrix y(x.rows(), count);
    for (std::size_t i = 0; i < x.rows(); ++i)
        std::copy_n(x.row(i).begin() + begin, count, y.row(i).begin());
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, begin, count](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) simd::axpy(1.0, g.row(i), ga.row(i).subspan(begin, count));
    });
}

Tensor2 row_softmax(const Tensor2& a) {
    Tape& t = tape_of(a, "row_softmax");
    const Matrix& x = a.value();
    Matrix y(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto xr = x.row(i);
        auto yr = y.row(i);
        const double mx = *std::max_element(xr.begin(), xr.end());
        double z = 0.0;
        for (std::size_t j = 0; j < xr.size(); ++j) z += yr[j] = std::exp(xr[j] - mx);
        for (double& v : yr) v /= z;
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        const Matrix& yv = tp.value(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            const double d = simd::dot(g.row(i), yv.row(i));
            for (std::size_t j = 0; j < g.cols(); ++j) ga(i, j) += yv(i, j) * (g(i, j) - d);
        }
    });
}

Tensor2 log_softmax_rows(const Tensor2& a) {
    Tape& t = tape_of(a, "log_softmax_rows");
    const Matrix& x = a.value();
    Matrix y(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto xr = x.row(i);
        const double mx = *std::max_element(xr.begin(), xr.end());
        double z = 0.0;
        for (double v : xr) z += std::exp(v - mx);
        const double lse = mx + std::log(z);
        for (std::size_t j = 0; j < xr.size(); ++j) y(i, j) = xr[j] - lse;
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        const Matrix& yv = tp.value(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            double gs = 0.0;
            for (double v : g.row(i)) gs += v;
            for (std::size_t j = 0; j < g.cols(); ++j) ga(i, j) += g(i, j) - std::exp(yv(i, j)) * gs;
        }
    });
}

Tensor2 logsumexp_rows(const Tensor2& a) {
    Tape& t = tape_of(a, "logsumexp_rows");
    const Matrix& x = a.value();
    Matrix y(x.rows(), 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto xr = x.row(i);
        const double mx = *std::max_element(xr.begin(), xr.end());
        double z = 0.0;
        for (double v : xr) z += std::exp(v - mx);
        y(i, 0) = mx + std::log(z);
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        const Matrix& xv = tp.value(ia);
        const Matrix& yv = tp.value(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < xv.rows(); ++i)
            for (std::size_t j = 0; j < xv.cols(); ++j) ga(i, j) += g(i, 0) * std::exp(xv(i, j) - yv(i, 0));
    });
}

Tensor2 group_softmax(const Tensor2& a, std::size_t groups) {
    Tape& t = tape_of(a, "group_softmax");
    const Matrix& x = a.value();
    if (groups == 0 || x.cols() % groups != 0) {
        throw std::invalid_argument("group_softmax: " + std::to_string(groups) + " groups do not divide " +
                                    x.shape_string());
    }
    const std::size_t width = x.cols() / groups;
    Matrix y(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t c = 0; c < width; ++c) {
            double mx = -std::numeric_limits<double>::infinity();
            for (std::size_t g = 0; g < groups; ++g) mx = std::max(mx, x(i, g * width + c));
            double z = 0.0;
            for (std::size_t g = 0; g < groups; ++g) z += y(i, g * width + c) = std::exp(x(i, g * width + c) - mx);
            for (std::size_t g = 0; g < groups; ++g) y(i, g * width + c) /= z;
        }
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, groups, width](Tape& tp, std::size_t self) {
        const Matrix& gr = tp.grad(self);
        const Matrix& yv = tp.value(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < gr.rows(); ++i) {
            for (std::size_t c = 0; c < width; ++c) {
                double d = 0.0;
                for (std::size_t g = 0; g < groups; ++g) d += gr(i, g * width + c) * yv(i, g * width + c);
                for (std::size_t g = 0; g < groups; ++g) {
                    const std::size_t j = g * width + c;
                    ga(i, j) += yv(i, j) * (gr(i, j) - d);
                }
            }
        }
    });
}

Tensor2 tanh(const Tensor2& a) {
    return unary(a, "tanh", [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Tensor2 relu(const Tensor2& a) {
    return unary(a, "relu", [](double x) { return x > 0.0 ? x : 0.0; },
                 [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor2 sigmoid(const Tensor2& a) {
    return unary(
        a, "sigmoid",
        [](double x) { return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); },
        [](double, double y) { return y * (1.0 - y); });
}

Tensor2 exp(const Tensor2& a) {
    return unary(a, "exp", [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Tensor2 log(const Tensor2& a) {
    return unary(a, "log", [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Tensor2 row_l2_normalize(const Tensor2& a, double eps) {
    Tape& t = tape_of(a, "row_l2_normalize");
    const Matrix& x = a.value();
    Matrix y(x.rows(), x.cols());
    std::vector<double> norms(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        norms[i] = std::max(std::sqrt(simd::dot(x.row(i), x.row(i))), eps);
        for (std::size_t j = 0; j < x.cols(); ++j) y(i, j) = x(i, j) / norms[i];
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, norms = std::move(norms), eps](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        const Matrix& yv = tp.value(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            // Below the clamp the map is linear: y = x / eps.
            const bool clamped = norms[i] <= eps;
            const double d = clamped ? 0.0 : simd::dot(g.row(i), yv.row(i));
            for (std::size_t j = 0; j < g.cols(); ++j) ga(i, j) += (g(i, j) - yv(i, j) * d) / norms[i];
        }
    });
}

Tensor2 dropout(const Tensor2& a, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("dropout: p must be in [0, 1], got " + std::to_string(p));
    Tape& t = tape_of(a, "dropout");
    if (!t.training() || p == 0.0) return a;
    const Matrix& x = a.value();
    Rng rng(seed);
    Matrix mask(x.rows(), x.cols());
    const double keep_scale = p < 1.0 ? 1.0 / (1.0 - p) : 0.0;
    for (double& m : mask.data()) m = uniform01(rng) >= p ? keep_scale : 0.0;
    Matrix y(x.rows(), x.cols());
    simd::fma_accumulate(x.data(), mask.data(), y.data());
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, mask = std::move(mask)](Tape& tp, std::size_t self) {
        simd::fma_accumulate(tp.grad(self).data(), mask.data(), tp.grad(ia).data());
    });
}

Tensor2 sum(const Tensor2& a) {
    Tape& t = tape_of(a, "sum");
    double s = 0.0;
    for (double v : a.value().data()) s += v;
    const std::size_t ia = a.id();
    return t.record(Matrix(1, 1, s), {ia}, [ia](Tape& tp, std::size_t self) {
        const double g = tp.grad(self)(0, 0);
        for (double& v : tp.grad(ia).data()) v += g;
    });
}

Tensor2 mean(const Tensor2& a) {
    const std::size_t n = a.value().size();
    if (n == 0) throw std::invalid_argument("mean: empty tensor");
    return scale(sum(a), 1.0 / static_cast<double>(n));
}

Tensor2 row_sum(const Tensor2& a) {
    Tape& t = tape_of(a, "row_sum");
    const Matrix& x = a.value();
    Matrix y(x.rows(), 1);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (double v : x.row(i)) y(i, 0) += v;
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < ga.rows(); ++i)
            for (double& v : ga.row(i)) v += g(i, 0);
    });
}

Tensor2 sum_rows(const Tensor2& a) {
    Tape& t = tape_of(a, "sum_rows");
    const Matrix& x = a.value();
    Matrix y(1, x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) simd::axpy(1.0, x.row(i), y.row(0));
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < ga.rows(); ++i) simd::axpy(1.0, g.row(0), ga.row(i));
    });
}

Tensor2 mean_rows(const Tensor2& a) {
    if (a.rows() == 0) throw std::invalid_argument("mean_rows: no rows");
    return scale(sum_rows(a), 1.0 / static_cast<double>(a.rows()));
}

Tensor2 gather_rows(const Tensor2& a, const std::vector<std::size_t>& index) {
    Tape& t = tape_of(a, "gather_rows");
    const Matrix& x = a.value();
    Matrix y(index.size(), x.cols());
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (index[i] >= x.rows()) {
            throw std::invalid_argument("gather_rows: index " + std::to_string(index[i]) + " out of range for " +
                                        x.shape_string());
        }
        std::copy(x.row(index[i]).begin(), x.row(index[i]).end(), y.row(i).begin());
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, index](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < index.size(); ++i) simd::axpy(1.0, g.row(i), ga.row(index[i]));
    });
}

Tensor2 pick(const Tensor2& a, const std::vector<std::size_t>& column) {
    Tape& t = tape_of(a, "pick");
    const Matrix& x = a.value();
    if (column.size() != x.rows()) {
        throw std::invalid_argument("pick: " + std::to_string(column.size()) + " indices for " + x.shape_string());
    }
    Matrix y(x.rows(), 1);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        if (column[i] >= x.cols()) throw std::invalid_argument("pick: column index out of range");
        y(i, 0) = x(i, column[i]);
    }
    const std::size_t ia = a.id();
    return t.record(std::move(y), {ia}, [ia, column](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& ga = tp.grad(ia);
        for (std::size_t i = 0; i < column.size(); ++i) ga(i, column[i]) += g(i, 0);
    });
}

Tensor2 pool_rows(const Tensor2& h, const tree::Assignment& s) {
    Tape& t = tape_of(h, "pool_rows");
    const Matrix& x = h.value();
    if (s.rows() != x.rows()) {
        throw std::invalid_argument("pool_rows: assignment has " + std::to_string(s.rows()) + " rows, hidden is " +
                                    x.shape_string());
    }
    Matrix y(s.num_clusters, x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) simd::axpy(1.0, x.row(i), y.row(s.cluster_of[i]));
    const std::size_t ih = h.id();
    return t.record(std::move(y), {ih}, [ih, cl = s.cluster_of](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& gh = tp.grad(ih);
        for (std::size_t i = 0; i < cl.size(); ++i) simd::axpy(1.0, g.row(cl[i]), gh.row(i));
    });
}

Tensor2 unpool_rows(const Tensor2& h, const tree::Assignment& s) {
    Tape& t = tape_of(h, "unpool_rows");
    const Matrix& x = h.value();
    if (s.num_clusters != x.rows()) {
        throw std::invalid_argument("unpool_rows: assignment has " + std::to_string(s.num_clusters) +
                                    " clusters, hidden is " + x.shape_string());
    }
    Matrix y(s.rows(), x.cols());
    for (std::size_t i = 0; i < s.rows(); ++i) {
        const auto src = x.row(s.cluster_of[i]);
        std::copy(src.begin(), src.end(), y.row(i).begin());
    }
    const std::size_t ih = h.id();
    return t.record(std::move(y), {ih}, [ih, cl = s.cluster_of](Tape& tp, std::size_t self) {
        const Matrix& g = tp.grad(self);
        Matrix& gh = tp.grad(ih);
        for (std::size_t i = 0; i < cl.size(); ++i) simd::axpy(1.0, g.row(i), gh.row(cl[i]));
    });
}

Tensor2 edge_aggregate(const Tensor2& h, const Tensor2& w, const std::vector<std::size_t>& src,
                       const std::vector<std::size_t>& dst, std::size_t num_nodes) {
    Tape& t = same_tape(h, w, "edge_aggregate");
    const Matrix& x = h.value();
    const Matrix& wv = w.value();
    const std::size_t m = src.size();
    if (dst.size() != m || wv.rows() != m || wv.cols() != 1) {
        throw std::invalid_argument("edge_aggregate: " + std::to_string(m) + " sources, " +
                                    std::to_string(dst.size()) + " targets, weights " + wv.shape_string());
    }
    std::vector<double> inv_deg(num_nodes, 0.0);
    for (std::size_t e = 0; e < m; ++e) {
        if (src[e] >= x.rows() || dst[e] >= num_nodes) throw std::invalid_argument("edge_aggregate: endpoint out of range");
        inv_deg[dst[e]] += 1.0;
    }
    for (double& d : inv_deg) d = d > 0.0 ? 1.0 / d : 0.0;
    Matrix y(num_nodes, x.cols());
    for (std::size_t e = 0; e < m; ++e) simd::axpy(wv(e, 0) * inv_deg[dst[e]], x.row(src[e]), y.row(dst[e]));
    const std::size_t ih = h.id(), iw = w.id();
    return t.record(std::move(y), {ih, iw},
                    [ih, iw, src, dst, inv_deg = std::move(inv_deg)](Tape& tp, std::size_t self) {
                        const Matrix& g = tp.grad(self);
                        const Matrix& xv = tp.value(ih);
                        const Matrix& wv2 = tp.value(iw);
                        Matrix* gh = grad_if(tp, ih);
                        Matrix* gw = grad_if(tp, iw);
                        for (std::size_t e = 0; e < src.size(); ++e) {
                            const double c = inv_deg[dst[e]];
                            if (gh) simd::axpy(wv2(e, 0) * c, g.row(dst[e]), gh->row(src[e]));
                            if (gw) (*gw)(e, 0) += c * simd::dot(g.row(dst[e]), xv.row(src[e]));
                        }
                    });
}

}  // namespace sebot::ad
