#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "sebot/ad/ops.hpp"
#include "sebot/obj/losses.hpp"
#include "sebot/pipeline/metrics.hpp"

using namespace sebot;

TEST_CASE("info_nce with every row identical") {
    ad::Tape t;
    const Matrix z{{1.0, 2.0}, {1.0, 2.0}};
    const auto l = obj::info_nce(t.constant(z), t.constant(z), 0.1);
    CHECK(l.item() == doctest::Approx(4.0 * std::log(3.0)));
    const auto m = obj::info_nce(t.constant(z), t.constant(z), 0.1, obj::Reduction::Mean);
    CHECK(m.item() == doctest::Approx(std::log(3.0)));
}

TEST_CASE("info_nce by hand for orthogonal views") {
    // a = e1, e2; b = e1, e2: positive cos 1, cross cos 0
    ad::Tape t;
    const Matrix z{{1.0, 0.0}, {0.0, 3.0}};
    const double tau = 0.5;
    const double per = -std::log(std::exp(1 / tau) / (std::exp(1 / tau) + 2.0));
    CHECK(obj::info_nce(t.constant(z), t.constant(z), tau).item() == doctest::Approx(4.0 * per));
}

TEST_CASE("info_nce is symmetric in its views") {
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        ad::Tape t;
        const auto a = t.constant(testing::random_matrix(7, 4, rng));
        const auto b = t.constant(testing::random_matrix(7, 4, rng));
        CHECK(obj::info_nce(a, b, 0.2).item() == obj::info_nce(b, a, 0.2).item());
    }
}

TEST_CASE("info_nce rejects bad input") {
    ad::Tape t;
    CHECK_THROWS_AS(obj::info_nce(t.constant(Matrix(1, 3, 1.0)), t.constant(Matrix(1, 3, 1.0)), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(obj::info_nce(t.constant(Matrix(3, 3, 1.0)), t.constant(Matrix(3, 2, 1.0)), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(obj::info_nce(t.constant(Matrix(3, 3, 1.0)), t.constant(Matrix(3, 3, 1.0)), 0.0),
                    std::invalid_argument);
}

TEST_CASE("classifier outputs normalized log probabilities") {
    Rng rng(4);
    ad::ParamStore store;
    obj::add_classifier_params(store, 6, 5, rng);
    ad::Tape t;
    const auto lp = obj::classifier_log_probs(t.constant(testing::random_matrix(9, 6, rng)), store, 0.0, 0);
    REQUIRE(lp.cols() == 2);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(std::exp(lp.value()(i, 0)) + std::exp(lp.value()(i, 1)) == doctest::Approx(1.0));
}

TEST_CASE("nll_rows by hand") {
    ad::Tape t;
    const Matrix lp{{std::log(0.9), std::log(0.1)}, {std::log(0.2), std::log(0.8)}, {std::log(0.5), std::log(0.5)}};
    const auto l = obj::nll_rows(t.constant(lp), {0, 1}, {0, 1});
    CHECK(l.item() == doctest::Approx(-(std::log(0.9) + std::log(0.8)) / 2.0));
    CHECK_THROWS(obj::nll_rows(t.constant(lp), {0, 1}, {0}));
    CHECK_THROWS(obj::nll_rows(t.constant(lp), {0}, {2}));
}

TEST_CASE("bce_classify matches nll over all rows") {
    Rng rng(5);
    ad::ParamStore store;
    obj::add_classifier_params(store, 3, 4, rng);
    ad::Tape t;
    const auto h = t.constant(testing::random_matrix(4, 3, rng));
    const auto c = obj::bce_classify(h, {0, 1, 1, 0}, store);
    CHECK(c.loss.item() == doctest::Approx(obj::nll_rows(c.log_probs, {0, 1, 2, 3}, {0, 1, 1, 0}).item()));
}

TEST_CASE("total loss combines terms") {
    ad::Tape t;
    const auto ce = t.constant(Matrix(1, 1, 2.0));
    const auto a = t.constant(Matrix(1, 1, 10.0));
    const auto b = t.constant(Matrix(1, 1, 100.0));
    CHECK(obj::total_loss(ce, a, b, {0.09, 0.03, 0.1}).item() == doctest::Approx(2.0 + 0.9 + 3.0));
    CHECK(obj::total_loss(ce, std::nullopt, b, {0.09, 0.03, 0.1}).item() == doctest::Approx(5.0));
    CHECK(obj::total_loss(ce, std::nullopt, std::nullopt, {0.09, 0.03, 0.1}).item() == doctest::Approx(2.0));
    CHECK_THROWS_AS(obj::total_loss(ce, a, b, {-0.1, 0.03, 0.1}), std::invalid_argument);
}

TEST_CASE("metrics examples") {
    const auto all = pipeline::compute_metrics({1, 0, 1, 0}, {1, 0, 1, 0});
    CHECK(all.accuracy == 1.0);
    CHECK(all.f1 == 1.0);
    CHECK(all.recall == 1.0);
    CHECK(all.precision == 1.0);

    std::vector<int> truth(10, 0), human(10, 0);
    for (int i = 0; i < 3; ++i) truth[i] = 1;
    const auto h = pipeline::compute_metrics(human, truth);
    CHECK(h.accuracy == doctest::Approx(0.7));
    CHECK(h.recall == 0.0);
    CHECK(h.precision == 0.0);
    CHECK(h.f1 == 0.0);

    // TP 3, FP 1, FN 2, TN 4
    const std::vector<int> pred{1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
    const std::vector<int> tr{1, 1, 1, 0, 1, 1, 0, 0, 0, 0};
    const auto r = pipeline::compute_metrics(pred, tr);
    CHECK(r.true_pos == 3);
    CHECK(r.false_pos == 1);
    CHECK(r.false_neg == 2);
    CHECK(r.true_neg == 4);
    CHECK(r.precision == doctest::Approx(0.75));
    CHECK(r.recall == doctest::Approx(0.6));
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0));
    CHECK(r.accuracy == doctest::Approx(0.7));

    CHECK_THROWS(pipeline::compute_metrics({1}, {1, 0}));
}
