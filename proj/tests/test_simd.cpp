#include <doctest.h>

#include <cmath>
#include <vector>

#include "sebot/simd/kernels.hpp"
#include "support.hpp"

using namespace sebot;

namespace {

std::vector<simd::Isa> available_variants() {
    std::vector<simd::Isa> out;
    for (auto isa : {simd::Isa::Avx2, simd::Isa::Neon})
        if (simd::isa_available(isa)) out.push_back(isa);
    return out;
}

std::vector<double> random_vec(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = 2.0 * uniform01(rng) - 1.0;
    return v;
}

}  // namespace

TEST_CASE("scalar table is always available") {
    CHECK(simd::isa_available(simd::Isa::Scalar));
    CHECK(simd::table_for(simd::Isa::Scalar).isa == simd::Isa::Scalar);
    CHECK(simd::isa_name(simd::active().isa).size() > 0);
}

TEST_CASE("vector variants agree with the scalar reference") {
    const auto& ref = simd::table_for(simd::Isa::Scalar);
    Rng rng(7);
    for (auto isa : available_variants()) {
        CAPTURE(simd::isa_name(isa));
        const auto& k = simd::table_for(isa);
        // Odd lengths exercise the remainder loops.
        for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 33u, 257u, 1000u}) {
            CAPTURE(n);
            const auto x = random_vec(n, rng);
            const auto y = random_vec(n, rng);
            const double d_ref = ref.dot(x.data(), y.data(), n);
            const double d = k.dot(x.data(), y.data(), n);
            CHECK(std::abs(d - d_ref) <= 1e-12 * (1.0 + std::abs(d_ref)) * std::max<std::size_t>(n, 1));

            auto y1 = y, y2 = y;
            ref.axpy(0.37, x.data(), y1.data(), n);
            k.axpy(0.37, x.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

            y1 = y, y2 = y;
            ref.scale(-1.25, y1.data(), n);
            k.scale(-1.25, y2.data(), n);
            CHECK(y1 == y2);

            auto z1 = x, z2 = x;
            ref.fma_accumulate(x.data(), y.data(), z1.data(), n);
            k.fma_accumulate(x.data(), y.data(), z2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) <= 1e-15);
        }
    }
}

TEST_CASE("unavailable variant is rejected") {
    for (auto isa : {simd::Isa::Avx2, simd::Isa::Neon})
        if (!simd::isa_available(isa)) CHECK_THROWS_AS(simd::table_for(isa), std::invalid_argument);
}
