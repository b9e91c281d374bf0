#include "sebot/simd/kernels.hpp"

namespace sebot::simd::detail {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void fma_accumulate_scalar(const double* x, const double* y, double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] += x[i] * y[i];
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{Isa::Scalar, dot_scalar, axpy_scalar, scale_scalar, fma_accumulate_scalar};
    return table;
}

}  // namespace sebot::simd::detail
