#include "sebot/simd/kernels.hpp"

#include <immintrin.h>

namespace sebot::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + kLanes), _mm256_loadu_pd(y + i + kLanes), acc1);
    }
    for (; i + kLanes <= n; i += kLanes) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, acc0);
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(y + i, _mm256_mul_pd(av, _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] *= a;
}

void fma_accumulate_avx2(const double* x, const double* y, double* z, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(z + i, _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                                                _mm256_loadu_pd(z + i)));
    }
    for (; i < n; ++i) z[i] += x[i] * y[i];
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{Isa::Avx2, dot_avx2, axpy_avx2, scale_avx2, fma_accumulate_avx2};
    return table;
}

}  // namespace sebot::simd::detail
