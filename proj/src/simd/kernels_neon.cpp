#include "sebot/simd/kernels.hpp"

#include <arm_neon.h>

namespace sebot::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + kLanes), vld1q_f64(y + i + kLanes));
    }
    for (; i + kLanes <= n; i += kLanes) acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double a, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) vst1q_f64(y + i, vmulq_f64(av, vld1q_f64(y + i)));
    for (; i < n; ++i) y[i] *= a;
}

void fma_accumulate_neon(const double* x, const double* y, double* z, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) vst1q_f64(z + i, vfmaq_f64(vld1q_f64(z + i), vld1q_f64(x + i), vld1q_f64(y + i)));
    for (; i < n; ++i) z[i] += x[i] * y[i];
}

}  // namespace

const KernelTable& neon_table() {
    static const KernelTable table{Isa::Neon, dot_neon, axpy_neon, scale_neon, fma_accumulate_neon};
    return table;
}

}  // namespace sebot::simd::detail
