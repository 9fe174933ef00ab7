#include "gpr/simd/kernels.hpp"

namespace gpr::simd::scalar {

// Four interleaved accumulators mirror the AVX2 lane layout.

void half_sq_dist_to(const double* y, double c, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y[i] - c;
        out[i] = 0.5 * (d * d);
    }
}

void half_sq_diff(const double* y, const double* mu, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y[i] - mu[i];
        out[i] = 0.5 * (d * d);
    }
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            const double d = a[i + k] - b[i + k];
            acc[k] = acc[k] + d * d;
        }
    }
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s = s + d * d;
    }
    return s;
}

double weighted_disagreement(const double* values, const std::uint32_t* src,
                             const std::uint32_t* dst, const double* w, std::size_t m) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t e = 0;
    for (; e + 4 <= m; e += 4) {
        for (std::size_t k = 0; k < 4; ++k) {
            const bool differ = values[src[e + k]] != values[dst[e + k]];
            acc[k] = acc[k] + (differ ? w[e + k] : 0.0);
        }
    }
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; e < m; ++e) {
        if (values[src[e]] != values[dst[e]]) s = s + w[e];
    }
    return s;
}

double sum(const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t k = 0; k < 4; ++k) acc[k] = acc[k] + y[i + k];
    }
    double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (; i < n; ++i) s = s + y[i];
    return s;
}

}  // namespace gpr::simd::scalar
