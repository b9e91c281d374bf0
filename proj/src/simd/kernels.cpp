#include "sebot/simd/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sebot::simd {
namespace {

bool cpu_has_avx2() {
#if defined(SEBOT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& select_default() {
    if (const char* forced = std::getenv("SEBOT_KERNELS"); forced != nullptr) {
        const std::string name(forced);
        if (name == "scalar") return table_for(Isa::Scalar);
        if (name == "avx2") return table_for(Isa::Avx2);
        if (name == "neon") return table_for(Isa::Neon);
        throw std::invalid_argument("SEBOT_KERNELS: unknown kernel set '" + name + "'");
    }
    if (isa_available(Isa::Avx2)) return table_for(Isa::Avx2);
    if (isa_available(Isa::Neon)) return table_for(Isa::Neon);
    return table_for(Isa::Scalar);
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: return cpu_has_avx2();
        case Isa::Neon:
#if defined(SEBOT_BUILD_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("kernel set '" + std::string(isa_name(isa)) + "' is not available");
    }
    switch (isa) {
#if defined(SEBOT_BUILD_AVX2)
        case Isa::Avx2: return detail::avx2_table();
#endif
#if defined(SEBOT_BUILD_NEON)
        case Isa::Neon: return detail::neon_table();
#endif
        default: return detail::scalar_table();
    }
}

const KernelTable& active() {
    static const KernelTable& table = select_default();
    return table;
}

}  // namespace sebot::simd
