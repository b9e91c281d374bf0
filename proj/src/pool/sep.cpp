#include "sebot/pool/sep.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "sebot/ad/ops.hpp"

namespace sebot::pool {
namespace {

void check_rows(std::size_t dim, const tree::Assignment& s, const char* op) {
    if (s.rows() != dim) {
        throw std::invalid_argument(std::string(op) + ": assignment has " + std::to_string(s.rows()) +
                                    " rows, state has dimension " + std::to_string(dim));
    }
}

void check_cols(std::size_t dim, const tree::Assignment& s, const char* op) {
    if (s.num_clusters != dim) {
        throw std::invalid_argument(std::string(op) + ": assignment has " + std::to_string(s.num_clusters) +
                                    " columns, state has dimension " + std::to_string(dim));
    }
}

}  // namespace

Matrix pool_adjacency(const Matrix& a, const tree::Assignment& s) {
    check_rows(a.rows(), s, "pool_adjacency");
    Matrix out(s.num_clusters, s.num_clusters);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(s.cluster_of[i], s.cluster_of[j]) += a(i, j);
    return out;
}

SparseMatrix pool_adjacency(const SparseMatrix& a, const tree::Assignment& s) {
    check_rows(a.rows, s, "pool_adjacency");
    std::vector<std::map<std::size_t, double>> rows(s.num_clusters);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            rows[s.cluster_of[i]][s.cluster_of[a.col_idx[p]]] += a.values[p];
    SparseMatrix out;
    out.rows = out.cols = s.num_clusters;
    for (const auto& r : rows) {
        for (const auto& [j, v] : r) {
            out.col_idx.push_back(j);
            out.values.push_back(v);
        }
        out.row_ptr.push_back(out.values.size());
    }
    return out;
}

Matrix unpool_adjacency(const Matrix& a, const tree::Assignment& s) {
    check_cols(a.rows(), s, "unpool_adjacency");
    Matrix out(s.rows(), s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.rows(); ++j) out(i, j) = a(s.cluster_of[i], s.cluster_of[j]);
    return out;
}

PooledState sep(const PooledState& state, const tree::Assignment& s) {
    check_rows(state.hidden.rows(), s, "sep");
    return {pool_adjacency(state.adjacency, s), ad::pool_rows(state.hidden, s), state.level + 1};
}

PooledState sep_u(const PooledState& state, const tree::Assignment& s) {
    check_cols(state.hidden.rows(), s, "sep_u");
    return {unpool_adjacency(state.adjacency, s), ad::unpool_rows(state.hidden, s),
            state.level > 0 ? state.level - 1 : 0};
}

}  // namespace sebot::pool
