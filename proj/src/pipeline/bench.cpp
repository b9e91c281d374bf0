#include "sebot/pipeline/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "sebot/core/random.hpp"
#include "sebot/tree/minimize.hpp"

namespace sebot::pipeline {

graph::SimpleGraph planted_partition_graph(std::size_t target_edges, std::uint64_t seed) {
    constexpr std::size_t kCommunity = 50;
    const std::size_t n = std::max<std::size_t>(2 * kCommunity, target_edges / 5);
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    std::vector<std::pair<graph::NodeId, graph::NodeId>> pairs;
    pairs.reserve(target_edges);
    // Ring through every node keeps the graph connected.
    for (std::size_t v = 0; v < n; ++v) pairs.emplace_back(v, (v + 1) % n);
    while (pairs.size() < target_edges) {
        const std::size_t u = any(rng);
        std::size_t v;
        if (uniform01(rng) < 0.8) {
            const std::size_t base = u / kCommunity * kCommunity;
            const std::size_t size = std::min(kCommunity, n - base);
            v = base + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(size));
        } else {
            v = any(rng);
        }
        if (u != v) pairs.emplace_back(u, v);
    }
    return graph::SimpleGraph(n, pairs);
}

std::vector<BenchPoint> bench_entropy(const std::vector<std::size_t>& sizes, std::size_t k, std::uint64_t seed,
                                      std::size_t repeats) {
    std::vector<BenchPoint> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        auto g = std::make_shared<const graph::SimpleGraph>(planted_partition_graph(sizes[i], mix_seed(seed, {i})));
        BenchPoint p{g->num_nodes(), g->num_edges(), std::numeric_limits<double>::infinity()};
        for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            const tree::EncodingTree t = tree::minimize_to_height(g, k);
            const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            p.seconds = std::min(p.seconds, s);
        }
        out.push_back(p);
    }
    return out;
}

double loglog_slope(const std::vector<BenchPoint>& points) {
    if (points.size() < 2) throw std::invalid_argument("loglog_slope: need at least two points");
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        if (p.edges == 0 || !(p.seconds > 0.0)) throw std::invalid_argument("loglog_slope: non-positive sample");
        mx += std::log(static_cast<double>(p.edges));
        my += std::log(p.seconds);
    }
    const double n = static_cast<double>(points.size());
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& p : points) {
        const double dx = std::log(static_cast<double>(p.edges)) - mx;
        sxy += dx * (std::log(p.seconds) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw std::invalid_argument("loglog_slope: all edge counts are equal");
    return sxy / sxx;
}

std::string to_csv(const std::vector<BenchPoint>& points) {
    std::ostringstream os;
    os << "nodes,edges,seconds\n";
    for (const auto& p : points) os << p.nodes << ',' << p.edges << ',' << p.seconds << '\n';
    return os.str();
}

}  // namespace sebot::pipeline
