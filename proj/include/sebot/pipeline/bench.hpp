#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sebot/graph/simple_graph.hpp"

namespace sebot::pipeline {

/// Sparse planted-partition graph with about `target_edges` edges, mean
/// degree 10 and communities of 50 nodes; 80% of sampled edges stay inside
/// a community.
graph::SimpleGraph planted_partition_graph(std::size_t target_edges, std::uint64_t seed);

struct BenchPoint {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double seconds = 0.0;  // best of `repeats`
};

/// Times the height-k tree construction on one planted graph per size.
std::vector<BenchPoint> bench_entropy(const std::vector<std::size_t>& sizes, std::size_t k, std::uint64_t seed,
                                      std::size_t repeats = 1);

/// Least-squares slope of log(seconds) against log(edges). Needs at least
/// two points with distinct edge counts.
double loglog_slope(const std::vector<BenchPoint>& points);

/// Header "nodes,edges,seconds".
std::string to_csv(const std::vector<BenchPoint>& points);

}  // namespace sebot::pipeline
