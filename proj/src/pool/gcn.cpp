#include "sebot/pool/gcn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sebot/ad/ops.hpp"

namespace sebot::pool {
namespace {

void check_adjacency(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("adjacency must be square, got " + a.shape_string());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) < 0.0) throw std::invalid_argument("adjacency has a negative entry");
            if (a(i, j) != a(j, i)) throw std::invalid_argument("adjacency is not symmetric");
        }
    }
}

}  // namespace

Matrix normalize_adjacency(const Matrix& a) {
    check_adjacency(a);
    const std::size_t n = a.rows();
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 1.0;
        for (double v : a.row(i)) d += v;
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = (a(i, j) + (i == j ? 1.0 : 0.0)) * inv_sqrt[i] * inv_sqrt[j];
    return out;
}

SparseMatrix normalize_adjacency(const SparseMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("adjacency must be square");
    const std::size_t n = a.rows;
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 1.0;
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            if (a.values[p] < 0.0) throw std::invalid_argument("adjacency has a negative entry");
            d += a.values[p];
        }
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    SparseMatrix out;
    out.rows = out.cols = n;
    for (std::size_t i = 0; i < n; ++i) {
        bool diag_done = false;
        auto emit = [&](std::size_t j, double v) {
            out.col_idx.push_back(j);
            out.values.push_back(v * inv_sqrt[i] * inv_sqrt[j]);
        };
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            const std::size_t j = a.col_idx[p];
            if (!diag_done && j >= i) {
                emit(i, 1.0 + (j == i ? a.values[p] : 0.0));
                diag_done = true;
                if (j == i) continue;
            }
            emit(j, a.values[p]);
        }
        if (!diag_done) emit(i, 1.0);
        out.row_ptr.push_back(out.values.size());
    }
    return out;
}

ad::Tensor2 gcn_layer(const Matrix& a, const ad::Tensor2& h, const ad::Tensor2& w) {
    require_shape(a.rows() == h.rows(), "gcn_layer", a, h.value());
    auto a_hat = std::make_shared<const SparseMatrix>(SparseMatrix::from_dense(normalize_adjacency(a)));
    return gcn_propagate(std::move(a_hat), h, w);
}

ad::Tensor2 gcn_propagate(std::shared_ptr<const SparseMatrix> a_hat, const ad::Tensor2& h, const ad::Tensor2& w) {
    if (a_hat->cols != h.rows()) {
        throw std::invalid_argument("gcn_propagate: operator has " + std::to_string(a_hat->cols) +
                                    " columns, hidden is " + h.value().shape_string());
    }
    return ad::relu(ad::spmm(std::move(a_hat), ad::matmul(h, w)));
}

}  // namespace sebot::pool
