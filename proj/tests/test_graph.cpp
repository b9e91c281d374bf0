#include <doctest.h>

#include <algorithm>
#include <set>

#include "sebot/graph/multi_rel_graph.hpp"
#include "sebot/graph/simple_graph.hpp"
#include "sebot/graph/views.hpp"
#include "support.hpp"

using namespace sebot;
using namespace sebot::graph;

TEST_CASE("simple graph symmetrizes, drops loops and duplicates") {
    const std::vector<std::pair<NodeId, NodeId>> p{{0, 1}, {1, 0}, {2, 2}, {1, 2}, {1, 2}};
    SimpleGraph g(4, p);
    CHECK(g.num_edges() == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(3) == 0);
    CHECK(g.volume() == 4);
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 2));
    const Matrix a = g.adjacency_matrix();
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 0) == 1.0);
    CHECK(a(2, 2) == 0.0);
}

TEST_CASE("multi-relational graph validates its invariants") {
    Matrix x(3, 2);
    CHECK_THROWS_AS(MultiRelGraph(3, {}, x), std::invalid_argument);
    CHECK_THROWS_AS(MultiRelGraph(3, {{{0, 5}}}, x), std::invalid_argument);
    CHECK_THROWS_AS(MultiRelGraph(3, {{{0, 1}}}, Matrix(2, 2)), std::invalid_argument);
    Splits overlap{{0}, {0}, {}};
    CHECK_THROWS_AS(MultiRelGraph(3, {{{0, 1}}}, x, {}, overlap), std::invalid_argument);
    MultiRelGraph g(3, {{{0, 1}}, {{1, 2}, {2, 1}}}, x);
    CHECK(g.num_relations() == 2);
    CHECK(g.num_edges() == 3);
    CHECK_FALSE(g.has_labels());
}

TEST_CASE("collapse merges relations and directions") {
    Matrix x(4, 1);
    MultiRelGraph g(4, {{{0, 1}, {1, 0}}, {{1, 0}, {2, 3}, {3, 3}}}, x);
    const SimpleGraph s = collapse_to_undirected(g);
    CHECK(s.num_edges() == 2);
    CHECK(s.has_edge(0, 1));
    CHECK(s.has_edge(2, 3));
}

TEST_CASE("ego subgraph collects nodes within m hops") {
    // path 0-1-2-3-4
    const std::vector<std::pair<NodeId, NodeId>> p{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    SimpleGraph g(5, p);
    auto e0 = ego_subgraph(g, 2, 0);
    CHECK(e0.to_global == std::vector<NodeId>{2});
    CHECK(e0.graph.num_edges() == 0);
    auto e1 = ego_subgraph(g, 2, 1);
    CHECK(e1.to_global == std::vector<NodeId>{1, 2, 3});
    CHECK(e1.center_local_id == 1);
    CHECK(e1.graph.num_edges() == 2);
    auto e2 = ego_subgraph(g, 0, 2);
    CHECK(e2.to_global == std::vector<NodeId>{0, 1, 2});
    CHECK(e2.center_local_id == 0);
}

TEST_CASE("augmentations are seeded and shape preserving") {
    Rng rng(11);
    const MultiRelGraph g = testing::random_multirel(30, 2, 60, 5, rng);
    const MultiRelGraph d1 = drop_edges(g, 0.3, 9);
    CHECK(d1 == drop_edges(g, 0.3, 9));
    CHECK(d1.num_edges() < g.num_edges());
    CHECK(d1.features() == g.features());
    CHECK(drop_edges(g, 0.0, 9) == g);
    CHECK(drop_edges(g, 1.0, 9).num_edges() == 0);

    const MultiRelGraph a = add_edges(g, 0.5, 3);
    CHECK(a.relation(0).size() == 90);
    CHECK(a.features() == g.features());

    const MultiRelGraph m = mask_feature_columns(g, 0.5, 5);
    for (std::size_t c = 0; c < 5; ++c) {
        bool all_zero = true, same = true;
        for (std::size_t i = 0; i < 30; ++i) {
            all_zero = all_zero && m.features()(i, c) == 0.0;
            same = same && m.features()(i, c) == g.features()(i, c);
        }
        CHECK((all_zero || same));
    }
    const MultiRelGraph f = drop_feature_entries(g, 0.5, 5);
    std::size_t zeros = 0;
    for (double v : f.features().data()) zeros += v == 0.0;
    CHECK(zeros > 30);
    CHECK(zeros < 120);
    CHECK(f.relations() == g.relations());
}
