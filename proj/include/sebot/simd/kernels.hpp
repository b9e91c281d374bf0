#pragma once

// Inner-loop arithmetic kernels with a scalar reference and ISA-specific
// variants. The active table is chosen once at first use from CPUID (or the
// SEBOT_KERNELS environment variable: "scalar", "avx2", "neon").

#include <cstddef>
#include <span>
#include <string_view>

namespace sebot::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
    Isa isa;
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // y[i] *= a
    void (*scale)(double a, double* y, std::size_t n);
    // z[i] += x[i] * y[i]
    void (*fma_accumulate)(const double* x, const double* y, double* z, std::size_t n);
};

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Kernel table for a specific ISA. Throws std::invalid_argument when the
/// variant is unavailable on this build or CPU.
const KernelTable& table_for(Isa isa);

/// Kernel table selected for this process.
const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    active().axpy(a, x.data(), y.data(), x.size());
}

inline void scale(double a, std::span<double> y) { active().scale(a, y.data(), y.size()); }

inline void fma_accumulate(std::span<const double> x, std::span<const double> y, std::span<double> z) {
    active().fma_accumulate(x.data(), y.data(), z.data(), x.size());
}

namespace detail {
const KernelTable& scalar_table();
#if defined(SEBOT_BUILD_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(SEBOT_BUILD_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace sebot::simd
