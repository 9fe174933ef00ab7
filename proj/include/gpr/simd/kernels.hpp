#pragma once

// Data-parallel inner loops shared by the objective, the expansion network
// builder and the model-selection scores.
//
// Every kernel has a scalar reference and, on x86-64, an AVX2 variant picked
// at runtime. Reductions use four interleaved partial sums combined as
// (s0 + s1) + (s2 + s3) followed by the sequential tail, in both variants, and
// neither variant contracts into FMA. The two paths therefore return
// bit-identical results, which the equivalence tests check exactly.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace gpr::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    /// out[i] = 0.5 * (y[i] - c)^2
    void (*half_sq_dist_to)(const double* y, double c, double* out, std::size_t n);
    /// out[i] = 0.5 * (y[i] - mu[i])^2
    void (*half_sq_diff)(const double* y, const double* mu, double* out, std::size_t n);
    /// sum_i (a[i] - b[i])^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
    /// sum_e w[e] * [values[src[e]] != values[dst[e]]]
    double (*weighted_disagreement)(const double* values, const std::uint32_t* src,
                                    const std::uint32_t* dst, const double* w, std::size_t m);
    /// sum_i y[i]
    double (*sum)(const double* y, std::size_t n);
};

namespace scalar {
void half_sq_dist_to(const double* y, double c, double* out, std::size_t n);
void half_sq_diff(const double* y, const double* mu, double* out, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double weighted_disagreement(const double* values, const std::uint32_t* src,
                             const std::uint32_t* dst, const double* w, std::size_t m);
double sum(const double* y, std::size_t n);
}  // namespace scalar

#if defined(GPR_HAVE_AVX2)
namespace avx2 {
void half_sq_dist_to(const double* y, double c, double* out, std::size_t n);
void half_sq_diff(const double* y, const double* mu, double* out, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
double weighted_disagreement(const double* values, const std::uint32_t* src,
                             const std::uint32_t* dst, const double* w, std::size_t m);
double sum(const double* y, std::size_t n);
}  // namespace avx2
#endif

/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available() noexcept;

/// Kernel table for the given ISA. Throws std::invalid_argument if unavailable.
const KernelTable& table_for(Isa isa);

/// The active table. Chosen on first use: AVX2 when available unless the
/// environment variable GPR_SIMD is set to "scalar".
const KernelTable& kernels() noexcept;
Isa active_isa() noexcept;

/// Overrides the runtime choice (tests and benchmarks).
void set_active_isa(Isa isa);

std::string_view isa_name(Isa isa) noexcept;

}  // namespace gpr::simd
