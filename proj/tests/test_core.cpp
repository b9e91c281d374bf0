#include <doctest.h>

#include "sebot/core/hash.hpp"
#include "sebot/core/matrix.hpp"
#include "sebot/core/sparse.hpp"
#include "support.hpp"

using namespace sebot;

TEST_CASE("matmul variants agree with the naive triple loop") {
    Rng rng(3);
    const Matrix a = testing::random_matrix(5, 7, rng);
    const Matrix b = testing::random_matrix(7, 4, rng);
    Matrix naive(5, 4);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 7; ++k) naive(i, j) += a(i, k) * b(k, j);
    CHECK(max_abs_diff(matmul(a, b), naive) < 1e-12);
    CHECK(max_abs_diff(matmul_tn(transpose(a), b), naive) < 1e-12);
    CHECK(max_abs_diff(matmul_nt(a, transpose(b)), naive) < 1e-12);
    CHECK_THROWS_AS(matmul(a, a), std::invalid_argument);
}

TEST_CASE("sparse round trip and products") {
    Rng rng(4);
    Matrix d = testing::random_matrix(6, 5, rng);
    for (std::size_t i = 0; i < d.size(); i += 3) d.data()[i] = 0.0;
    const SparseMatrix s = SparseMatrix::from_dense(d);
    CHECK(s.to_dense() == d);
    const Matrix b = testing::random_matrix(5, 3, rng);
    CHECK(max_abs_diff(spmm(s, b), matmul(d, b)) < 1e-12);
    const Matrix c = testing::random_matrix(6, 3, rng);
    Matrix acc(5, 3);
    spmm_tn_acc(s, c, acc);
    CHECK(max_abs_diff(acc, matmul_tn(d, c)) < 1e-12);

    const SparseMatrix bd = block_diagonal({s, SparseMatrix::from_dense(Matrix{{1.0, 2.0}})});
    CHECK(bd.rows == 7);
    CHECK(bd.cols == 7);
    CHECK(bd.to_dense()(6, 5) == 1.0);
    CHECK(bd.to_dense()(6, 6) == 2.0);
    CHECK(bd.to_dense()(0, 5) == 0.0);
}

TEST_CASE("fnv1a is stable and order sensitive") {
    Fnv1a a, b;
    a.update("ab");
    b.update("ba");
    CHECK(a.hex() != b.hex());
    Fnv1a e;
    CHECK(e.digest() == 14695981039346656037ULL);
    Fnv1a f;
    f.update("a");
    CHECK(f.digest() == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("mix_seed separates streams") {
    CHECK(mix_seed(1, {0}) != mix_seed(1, {1}));
    CHECK(mix_seed(1, {0}) != mix_seed(2, {0}));
    CHECK(mix_seed(5, {1, 2}) == mix_seed(5, {1, 2}));
}
