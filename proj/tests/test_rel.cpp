#include <doctest.h>

#include <cmath>

#include "grad_suite.hpp"
#include "reference.hpp"

using namespace sebot;

TEST_CASE("edge weight with neutral noise is tanh of the scaled logit") {
    const std::vector<double> hi{1.0, -0.5}, hj{0.25, 2.0}, g{0.1, 0.2, -0.3, 0.05};
    // logit = 0.1 - 0.1 - 0.075 + 0.1 = 0.025
    CHECK(rel::edge_weight(hi, hj, g, 0.1, 0.5) == doctest::Approx(std::tanh(0.25)));
    CHECK(rel::edge_weight(hi, hj, g, 1.0, 0.5) == doctest::Approx(std::tanh(0.025)));
}

TEST_CASE("edge weight saturates for small temperature") {
    const std::vector<double> hi{1.0}, hj{1.0}, g{0.5, 0.5};
    CHECK(std::abs(rel::edge_weight(hi, hj, g, 0.01, 0.5) - 1.0) < 1e-8);
    const std::vector<double> gn{-0.5, -0.5};
    CHECK(std::abs(rel::edge_weight(hi, hj, gn, 0.01, 0.5) + 1.0) < 1e-8);
}

TEST_CASE("edge weight is odd in the logit") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> hi(3), hj(3), g(6), ng(6);
        for (auto& v : hi) v = uniform01(rng) - 0.5;
        for (auto& v : hj) v = uniform01(rng) - 0.5;
        for (std::size_t k = 0; k < 6; ++k) {
            g[k] = uniform01(rng) - 0.5;
            ng[k] = -g[k];
        }
        const double eps = 0.05 + 0.9 * uniform01(rng);
        CHECK(rel::edge_weight(hi, hj, g, 0.7, eps) == doctest::Approx(-rel::edge_weight(hi, hj, ng, 0.7, 1.0 - eps)));
    }
}

TEST_CASE("edge weight rejects bad arguments") {
    const std::vector<double> h{1.0}, g{1.0, 1.0}, bad{1.0};
    CHECK_THROWS_AS(rel::edge_weight(h, h, g, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(rel::edge_weight(h, h, g, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rel::edge_weight(h, h, bad, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("batched edge weights match the scalar form") {
    Rng rng(8);
    ad::Tape t;
    const Matrix hm = testing::random_matrix(5, 3, rng);
    const Matrix gm = testing::random_matrix(6, 1, rng);
    const std::vector<std::size_t> src{0, 1, 4, 3}, dst{1, 2, 2, 0};
    std::vector<double> eps{0.2, 0.5, 0.9, 0.7}, noise;
    for (double e : eps) noise.push_back(std::log(e) - std::log(1.0 - e));
    const auto w = rel::edge_weights(t.constant(hm), t.constant(gm), src, dst, 0.3, noise);
    for (std::size_t e = 0; e < src.size(); ++e) {
        const double ref = rel::edge_weight(hm.row(dst[e]), hm.row(src[e]), gm.data(), 0.3, eps[e]);
        CHECK(w.value()(e, 0) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("aggregation examples") {
    ad::Tape t;
    const Matrix h{{1, 0}, {0, 1}, {2, 2}, {5, 5}};
    const auto ht = t.constant(h);
    const auto id = t.constant(Matrix::identity(2));
    // node 0 receives from 1 and 2; node 3 isolated
    const std::vector<std::size_t> src{1, 2, 0}, dst{0, 0, 1};

    const auto ones = rel::relational_aggregate(ht, src, dst, t.constant(Matrix(3, 1, 1.0)), id);
    CHECK(ones.value()(0, 0) == doctest::Approx(1.0));
    CHECK(ones.value()(0, 1) == doctest::Approx(1.5));
    CHECK(ones.value()(1, 0) == doctest::Approx(1.0));
    CHECK(ones.value()(3, 0) == 0.0);
    CHECK(ones.value()(2, 1) == 0.0);

    const auto neg = rel::relational_aggregate(ht, src, dst, t.constant(Matrix(3, 1, -1.0)), id);
    CHECK(neg.value()(0, 1) == doctest::Approx(-1.5));

    // +1 and -1 on equal neighbors cancel
    const Matrix same{{0, 0}, {3, 4}, {3, 4}};
    const auto cancel = rel::relational_aggregate(t.constant(same), {1, 2}, {0, 0},
                                                  t.constant(Matrix(2, 1, std::vector<double>{1.0, -1.0})),
                                                  t.constant(Matrix::identity(2)));
    CHECK(cancel.value()(0, 0) == 0.0);
    CHECK(cancel.value()(0, 1) == 0.0);
}

TEST_CASE("channel mixing weights sum to one across relations") {
    Rng rng(2);
    for (std::size_t R : {1u, 2u, 3u}) {
        ad::Tape t;
        std::vector<ad::Tensor2> per, mix;
        for (std::size_t r = 0; r < R; ++r) {
            per.push_back(t.constant(testing::random_matrix(6, 4, rng)));
            mix.push_back(t.constant(testing::random_matrix(R * 4, 4, rng)));
        }
        const Matrix& u = rel::rcm_weights(per, mix).value();
        REQUIRE(u.cols() == R * 4);
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t c = 0; c < 4; ++c) {
                double s = 0.0;
                for (std::size_t r = 0; r < R; ++r) s += u(i, r * 4 + c);
                CHECK(s == doctest::Approx(1.0));
                if (R == 1) CHECK(u(i, c) == doctest::Approx(1.0));
            }
    }
}


TEST_CASE("unsigned unmixed encoder reduces to a relational GCN") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const std::size_t R = 1 + seed % 3;
        const std::size_t L = 1 + (seed / 3) % 3;
        const auto g = testing::random_multirel(9, R, 10, 4, rng);
        rel::RelEncoderOptions opt;
        opt.hidden_dim = 5;
        opt.layers = L;
        opt.signed_weights = false;
        opt.use_rcm = false;
        ad::ParamStore store;
        rel::add_rel_params(store, 4, R, opt, rng);
        ad::Tape t(false);
        const Matrix got =
            rel::encode_gamma(rel::RelationalEdges::from_graph(g), t.constant(g.features()), store, opt, seed).value();
        const Matrix ref = testing::rgcn_reference(g, store, L, 5);
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(got.data()[i] - ref.data()[i]) < 1e-9);
    }
}

TEST_CASE("isolated nodes get finite embeddings") {
    Rng rng(3);
    graph::MultiRelGraph g = testing::random_multirel(6, 2, 0, 3, rng);
    rel::RelEncoderOptions opt;
    opt.hidden_dim = 4;
    ad::ParamStore store;
    rel::add_rel_params(store, 3, 2, opt, rng);
    ad::Tape t(true);
    const auto h = rel::encode_gamma(rel::RelationalEdges::from_graph(g), t.constant(g.features()), store, opt, 1);
    for (double v : h.value().data()) CHECK(std::isfinite(v));
}

TEST_CASE("edge weight reports cover every edge") {
    Rng rng(4);
    const auto g = testing::random_multirel(8, 2, 6, 3, rng);
    rel::RelEncoderOptions opt;
    opt.hidden_dim = 4;
    ad::ParamStore store;
    rel::add_rel_params(store, 3, 2, opt, rng);
    ad::Tape t;
    std::vector<rel::EdgeWeightReport> reports;
    rel::encode_gamma(rel::RelationalEdges::from_graph(g), t.constant(g.features()), store, opt, 1, &reports);
    REQUIRE(reports.size() == opt.layers);
    for (const auto& rep : reports) {
        REQUIRE(rep.relations.size() == 2);
        for (std::size_t r = 0; r < 2; ++r) {
            CHECK(rep.relations[r].size() == g.relations()[r].size());
            for (const auto& e : rep.relations[r]) CHECK(std::abs(e.omega) <= 1.0);
        }
    }
}

TEST_CASE("relational encoder passes finite-difference checks") {
    for (const auto& c : testing::encoder_gradient_cases()) {
        if (c.name.rfind("encode_gamma", 0) != 0) continue;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto r = c.run(seed);
            INFO(c.name << " seed " << seed << " worst " << r.worst_param << "[" << r.worst_index << "]");
            CHECK(r.max_rel_error < 1e-4);
        }
    }
}
