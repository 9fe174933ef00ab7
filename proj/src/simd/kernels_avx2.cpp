#include "gpr/simd/kernels.hpp"

#include <immintrin.h>

// Compiled with -mavx2 (no -mfma); only reached after a runtime CPU check.

namespace gpr::simd::avx2 {
namespace {

inline double reduce_lanes(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace

void half_sq_dist_to(const double* y, double c, double* out, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(y + i), vc);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_mul_pd(d, d)));
    }
    for (; i < n; ++i) {
        const double d = y[i] - c;
        out[i] = 0.5 * (d * d);
    }
}

void half_sq_diff(const double* y, const double* mu, double* out, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(mu + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_mul_pd(d, d)));
    }
    for (; i < n; ++i) {
        const double d = y[i] - mu[i];
        out[i] = 0.5 * (d * d);
    }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = reduce_lanes(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s = s + d * d;
    }
    return s;
}

double weighted_disagreement(const double* values, const std::uint32_t* src,
                             const std::uint32_t* dst, const double* w, std::size_t m) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t e = 0;
    for (; e + 4 <= m; e += 4) {
        const __m128i is = _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + e));
        const __m128i id = _mm_loadu_si128(reinterpret_cast<const __m128i*>(dst + e));
        const __m256d vs = _mm256_i32gather_pd(values, is, 8);
        const __m256d vd = _mm256_i32gather_pd(values, id, 8);
        // NEQ_UQ matches C++ operator!= (true when either side is NaN).
        const __m256d differ = _mm256_cmp_pd(vs, vd, _CMP_NEQ_UQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(differ, _mm256_loadu_pd(w + e)));
    }
    double s = reduce_lanes(acc);
    for (; e < m; ++e) {
        if (values[src[e]] != values[dst[e]]) s = s + w[e];
    }
    return s;
}

double sum(const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(y + i));
    double s = reduce_lanes(acc);
    for (; i < n; ++i) s = s + y[i];
    return s;
}

}  // namespace gpr::simd::avx2
