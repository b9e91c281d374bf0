#pragma once

// Loop-level reference implementations used as test oracles.

#include <algorithm>
#include <string>
#include <vector>

#include "sebot/ad/param_store.hpp"
#include "sebot/core/matrix.hpp"
#include "sebot/graph/multi_rel_graph.hpp"

namespace sebot::testing {

inline Matrix naive_pool(const Matrix& a, const Matrix& s) {
    // S^T A S with explicit triple loops
    Matrix out(s.cols(), s.cols());
    for (std::size_t p = 0; p < s.cols(); ++p)
        for (std::size_t q = 0; q < s.cols(); ++q)
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) out(p, q) += s(i, p) * a(i, j) * s(j, q);
    return out;
}

inline Matrix naive_unpool(const Matrix& a, const Matrix& s) {
    Matrix out(s.rows(), s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.rows(); ++j)
            for (std::size_t p = 0; p < s.cols(); ++p)
                for (std::size_t q = 0; q < s.cols(); ++q) out(i, j) += s(i, p) * a(p, q) * s(j, q);
    return out;
}

// Plain relational GCN written with loops: h W_root + sum_r mean_{j->i} h_j W_r,
// relu between layers.
inline Matrix rgcn_reference(const graph::MultiRelGraph& g, const ad::ParamStore& store, std::size_t layers, std::size_t d) {
    const std::size_t n = g.num_nodes();
    const Matrix& x = g.features();
    const Matrix& win = store.get("rel.in.W").value;
    const Matrix& bin = store.get("rel.in.b").value;
    Matrix h(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < d; ++c) {
            double s = bin(0, c);
            for (std::size_t k = 0; k < x.cols(); ++k) s += x(i, k) * win(k, c);
            h(i, c) = s;
        }
    for (std::size_t l = 0; l < layers; ++l) {
        const std::string pre = "rel." + std::to_string(l) + ".";
        const Matrix& root = store.get(pre + "root.W").value;
        Matrix next(n, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < d; ++c)
                for (std::size_t k = 0; k < d; ++k) next(i, c) += h(i, k) * root(k, c);
        for (std::size_t r = 0; r < g.num_relations(); ++r) {
            const Matrix& w = store.get(pre + std::to_string(r) + ".W").value;
            std::vector<double> indeg(n, 0.0);
            for (const auto& e : g.relations()[r]) indeg[e.dst] += 1.0;
            for (const auto& e : g.relations()[r])
                for (std::size_t c = 0; c < d; ++c) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < d; ++k) s += h(e.src, k) * w(k, c);
                    next(e.dst, c) += s / indeg[e.dst];
                }
        }
        if (l + 1 < layers)
            for (double& v : next.data()) v = std::max(v, 0.0);
        h = next;
    }
    return h;
}


}  // namespace sebot::testing
