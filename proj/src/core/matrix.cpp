#include "sebot/core/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sebot/simd/kernels.hpp"

namespace sebot {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                    " does not match shape " + shape_string());
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

std::string Matrix::shape_string() const {
    return "(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
}

void require_shape(bool ok, const char* op, const Matrix& a, const Matrix& b) {
    if (!ok) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_string() + " vs " +
                                    b.shape_string());
    }
}

void matmul_acc(const Matrix& a, const Matrix& b, Matrix& c) {
    require_shape(a.cols() == b.rows(), "matmul", a, b);
    const auto& k = simd::active();
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* out = c.data().data() + i * n;
        for (std::size_t p = 0; p < a.cols(); ++p) {
            const double s = a(i, p);
            if (s == 0.0) continue;
            k.axpy(s, b.data().data() + p * n, out, n);
        }
    }
}

void matmul_tn_acc(const Matrix& a, const Matrix& b, Matrix& c) {
    require_shape(a.rows() == b.rows(), "matmul_tn", a, b);
    const auto& k = simd::active();
    const std::size_t n = b.cols();
    for (std::size_t p = 0; p < a.rows(); ++p) {
        const double* brow = b.data().data() + p * n;
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double s = a(p, i);
            if (s == 0.0) continue;
            k.axpy(s, brow, c.data().data() + i * n, n);
        }
    }
}

void matmul_nt_acc(const Matrix& a, const Matrix& b, Matrix& c) {
    require_shape(a.cols() == b.cols(), "matmul_nt", a, b);
    const auto& k = simd::active();
    const std::size_t inner = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.data().data() + i * inner;
        for (std::size_t j = 0; j < b.rows(); ++j) {
            c(i, j) += k.dot(arow, b.data().data() + j * inner, inner);
        }
    }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    require_shape(a.cols() == b.rows(), "matmul", a, b);
    Matrix c(a.rows(), b.cols());
    matmul_acc(a, b, c);
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    require_shape(a.rows() == b.rows(), "matmul_tn", a, b);
    Matrix c(a.cols(), b.cols());
    matmul_tn_acc(a, b, c);
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    require_shape(a.cols() == b.cols(), "matmul_nt", a, b);
    Matrix c(a.rows(), b.rows());
    matmul_nt_acc(a, b, c);
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_shape(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff", a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace sebot
