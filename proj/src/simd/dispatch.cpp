#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gpr/simd/kernels.hpp"

namespace gpr::simd {
namespace {

constexpr KernelTable kScalarTable{
    &scalar::half_sq_dist_to, &scalar::half_sq_diff, &scalar::sum_sq_diff,
    &scalar::weighted_disagreement, &scalar::sum,
};

#if defined(GPR_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    &avx2::half_sq_dist_to, &avx2::half_sq_diff, &avx2::sum_sq_diff,
    &avx2::weighted_disagreement, &avx2::sum,
};
#endif

Isa detect() noexcept {
    if (const char* env = std::getenv("GPR_SIMD"); env != nullptr && std::string(env) == "scalar") {
        return Isa::Scalar;
    }
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

bool avx2_available() noexcept {
#if defined(GPR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

const KernelTable& table_for(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return kScalarTable;
        case Isa::Avx2:
#if defined(GPR_HAVE_AVX2)
            if (avx2_available()) return kAvx2Table;
#endif
            throw std::invalid_argument("AVX2 kernels are not available on this build/CPU");
    }
    return kScalarTable;
}

const KernelTable& kernels() noexcept { return table_for(active().load(std::memory_order_relaxed)); }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    (void)table_for(isa);
    active().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) noexcept {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace gpr::simd
