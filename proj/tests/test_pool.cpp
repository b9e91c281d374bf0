#include <doctest.h>

#include <cmath>

#include "grad_suite.hpp"
#include "reference.hpp"
#include "sebot/pool/gcn.hpp"
#include "sebot/pool/sep.hpp"

using namespace sebot;

TEST_CASE("pool and unpool adjacency match triple products") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 12;
        const std::size_t c = 1 + rng() % n;
        const auto s = testing::detail::random_assignment(n, c, rng);
        Matrix a = testing::random_matrix(n, n, rng);
        const Matrix sd = s.to_dense();
        CHECK(max_abs_diff(pool::pool_adjacency(a, s), testing::naive_pool(a, sd)) < 1e-12);
        CHECK(max_abs_diff(pool::pool_adjacency(SparseMatrix::from_dense(a), s).to_dense(), testing::naive_pool(a, sd)) <
              1e-12);
        const Matrix small = testing::random_matrix(c, c, rng);
        CHECK(max_abs_diff(pool::unpool_adjacency(small, s), testing::naive_unpool(small, sd)) < 1e-12);
    }
}

TEST_CASE("sep then sep_u is constant within clusters") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng() % 8;
        const std::size_t c = 1 + rng() % (n - 1);
        const auto s = testing::detail::random_assignment(n, c, rng);
        ad::Tape t;
        pool::PooledState st{testing::random_matrix(n, n, rng), t.constant(testing::random_matrix(n, 3, rng)), 0};
        const auto up = pool::sep(st, s);
        CHECK(up.level == 1);
        CHECK(up.hidden.rows() == c);
        const auto down = pool::sep_u(up, s);
        CHECK(down.level == 0);
        const Matrix& h = down.hidden.value();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (s.cluster_of[i] == s.cluster_of[j])
                    for (std::size_t k = 0; k < 3; ++k) CHECK(h(i, k) == h(j, k));
        // pooled features are cluster sums
        const Matrix& x = st.hidden.value();
        for (std::size_t k = 0; k < 3; ++k) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (s.cluster_of[i] == s.cluster_of[0]) total += x(i, k);
            CHECK(up.hidden.value()(s.cluster_of[0], k) == doctest::Approx(total));
        }
    }
}

TEST_CASE("normalize_adjacency small cases") {
    const Matrix a{{0, 1}, {1, 0}};
    const Matrix n = pool::normalize_adjacency(a);
    for (double v : n.data()) CHECK(v == doctest::Approx(0.5));

    const Matrix iso(3, 3);
    CHECK(pool::normalize_adjacency(iso) == Matrix::identity(3));

    // path 0-1-2: degrees with self loops 2, 3, 2
    const Matrix p{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
    const Matrix np = pool::normalize_adjacency(p);
    CHECK(np(0, 0) == doctest::Approx(0.5));
    CHECK(np(0, 1) == doctest::Approx(1.0 / std::sqrt(6.0)));
    CHECK(np(1, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(np(0, 2) == 0.0);
    CHECK(max_abs_diff(pool::normalize_adjacency(SparseMatrix::from_dense(p)).to_dense(), np) < 1e-15);
}

TEST_CASE("encoders pass finite-difference checks") {
    for (const auto& c : testing::encoder_gradient_cases()) {
        if (c.name.rfind("encode_gamma", 0) == 0) continue;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto r = c.run(seed);
            INFO(c.name << " seed " << seed << " worst " << r.worst_param << "[" << r.worst_index << "]");
            CHECK(r.max_rel_error < 1e-4);
        }
    }
}

TEST_CASE("encoder output shapes") {
    Rng rng(3);
    const auto g = testing::random_connected_graph(10, 0.3, rng);
    const auto stack = tree::assignment_stack(tree::minimize_to_height(g, 3));
    ad::ParamStore store;
    pool::add_alpha_params(store, 4, 3, 5, rng);
    pool::add_beta_params(store, 4, 3, 5, rng);
    pool::EncoderOptions opt;
    opt.hidden_dim = 5;
    ad::Tape t;
    const auto x = t.constant(testing::random_matrix(10, 4, rng));
    const auto a = pool::encode_alpha(g, stack, x, store, opt, 1);
    CHECK(a.rows() == 10);
    CHECK(a.cols() == 5);

    const auto sub = graph::ego_subgraph(g, 0, 1);
    const auto tr = tree::build_encoding_tree(std::make_shared<const graph::SimpleGraph>(sub.graph), 3);
    const auto xs = ad::gather_rows(x, std::vector<std::size_t>(sub.to_global.begin(), sub.to_global.end()));
    const auto b = pool::encode_beta(sub, tr, xs, store, opt, 1);
    CHECK(b.rows() == 1);
    CHECK(b.cols() == 15);
}
