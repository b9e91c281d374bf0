#include "sebot/tree/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sebot::tree {

Partition canonical_partition(Partition p) {
    for (auto& c : p) std::sort(c.begin(), c.end());
    std::erase_if(p, [](const auto& c) { return c.empty(); });
    std::sort(p.begin(), p.end());
    return p;
}

double height2_entropy(const graph::SimpleGraph& g, const Partition& clusters) {
    const double total = static_cast<double>(g.volume());
    if (total == 0.0) return 0.0;
    std::vector<std::size_t> owner(g.num_nodes(), std::numeric_limits<std::size_t>::max());
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (graph::NodeId v : clusters[c]) owner[v] = c;

    double h = 0.0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        double vol = 0.0;
        double cut = 0.0;
        for (graph::NodeId v : clusters[c]) {
            vol += static_cast<double>(g.degree(v));
            for (graph::NodeId u : g.neighbors(v))
                if (owner[u] != c) cut += 1.0;
        }
        if (vol > 0.0 && cut > 0.0) h -= cut / total * std::log2(vol / total);
        for (graph::NodeId v : clusters[c]) {
            const double d = static_cast<double>(g.degree(v));
            // A leaf's cut equals its degree.
            if (d > 0.0) h -= d / total * std::log2(d / vol);
        }
    }
    return h;
}

PartitionOptimum brute_force_min_partition(const graph::SimpleGraph& g, std::size_t k) {
    if (k != 2) throw std::invalid_argument("brute_force_min_partition: only height 2 is enumerated");
    const std::size_t n = g.num_nodes();
    if (n > kBruteForceMaxNodes) {
        throw std::invalid_argument("brute_force_min_partition: graph too large for exhaustive search");
    }
    if (g.volume() == 0) throw std::invalid_argument("brute_force_min_partition: graph has zero volume");

    PartitionOptimum best;
    best.entropy = std::numeric_limits<double>::infinity();
    // Restricted growth string: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
    std::vector<std::size_t> rgs(n, 0);
    std::vector<std::size_t> prefix_max(n, 0);  // max(rgs[0..i])
    auto advance = [&]() {
        for (std::size_t i = n; i-- > 1;) {
            if (rgs[i] <= prefix_max[i - 1]) {
                ++rgs[i];
                prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
                for (std::size_t j = i + 1; j < n; ++j) {
                    rgs[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                return true;
            }
        }
        return false;
    };
    do {
        Partition p(n == 0 ? 0 : prefix_max[n - 1] + 1);
        for (std::size_t i = 0; i < n; ++i) p[rgs[i]].push_back(i);
        const double h = height2_entropy(g, p);
        if (h < best.entropy) {
            best.entropy = h;
            best.partition = canonical_partition(std::move(p));
        }
    } while (advance());
    return best;
}

}  // namespace sebot::tree
