#include "sebot/core/sparse.hpp"

#include <stdexcept>
#include <string>

#include "sebot/simd/kernels.hpp"

namespace sebot {

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
    SparseMatrix s;
    s.rows = m.rows();
    s.cols = m.cols();
    s.row_ptr.reserve(m.rows() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) != 0.0) {
                s.col_idx.push_back(j);
                s.values.push_back(m(i, j));
            }
        }
        s.row_ptr.push_back(s.values.size());
    }
    return s;
}

Matrix SparseMatrix::to_dense() const {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) m(i, col_idx[p]) += values[p];
    return m;
}

SparseMatrix block_diagonal(const std::vector<SparseMatrix>& blocks) {
    SparseMatrix out;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows; ++i) {
            for (std::size_t p = b.row_ptr[i]; p < b.row_ptr[i + 1]; ++p) {
                out.col_idx.push_back(out.cols + b.col_idx[p]);
                out.values.push_back(b.values[p]);
            }
            out.row_ptr.push_back(out.values.size());
        }
        out.rows += b.rows;
        out.cols += b.cols;
    }
    return out;
}

Matrix spmm(const SparseMatrix& a, const Matrix& b) {
    if (a.cols != b.rows()) {
        throw std::invalid_argument("spmm: shape mismatch (" + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                                    ") vs " + b.shape_string());
    }
    const auto& k = simd::active();
    const std::size_t n = b.cols();
    Matrix c(a.rows, n);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            k.axpy(a.values[p], b.data().data() + a.col_idx[p] * n, c.data().data() + i * n, n);
    return c;
}

void spmm_tn_acc(const SparseMatrix& a, const Matrix& b, Matrix& c) {
    const auto& k = simd::active();
    const std::size_t n = b.cols();
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            k.axpy(a.values[p], b.data().data() + i * n, c.data().data() + a.col_idx[p] * n, n);
}

}  // namespace sebot
