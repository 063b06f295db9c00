// AVX2 variants of the similarity kernels. This TU is compiled with
// -mavx2 -mfma; callers must go through the runtime dispatcher.
#include "apigen/kernels/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <cmath>
#include <immintrin.h>

namespace apigen::kernels {

namespace {

inline float hsum256(__m256 v) {
    __m128 lo = _mm256_castps256_ps128(v);
    __m128 hi = _mm256_extractf128_ps(v, 1);
    __m128 sum = _mm_add_ps(lo, hi);
    sum = _mm_hadd_ps(sum, sum);
    sum = _mm_hadd_ps(sum, sum);
    return _mm_cvtss_f32(sum);
}

} // namespace

float dot_avx2(std::span<const float> a, std::span<const float> b) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256 acc0 = _mm256_setzero_ps();
    __m256 acc1 = _mm256_setzero_ps();
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a.data() + i), _mm256_loadu_ps(b.data() + i), acc0);
        acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a.data() + i + 8), _mm256_loadu_ps(b.data() + i + 8), acc1);
    }
    for (; i + 8 <= n; i += 8)
        acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a.data() + i), _mm256_loadu_ps(b.data() + i), acc0);
    float acc = hsum256(_mm256_add_ps(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

float norm_sqr_avx2(std::span<const float> a) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256 acc = _mm256_setzero_ps();
    for (; i + 8 <= n; i += 8) {
        __m256 v = _mm256_loadu_ps(a.data() + i);
        acc = _mm256_fmadd_ps(v, v, acc);
    }
    float s = hsum256(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

void cosine_batch_avx2(std::span<const float> query, const float* rows, std::size_t count,
                       std::size_t dims, float* out) {
    const float qn = std::sqrt(norm_sqr_avx2(query));
    for (std::size_t r = 0; r < count; ++r) {
        std::span<const float> row(rows + r * dims, dims);
        const float rn = std::sqrt(norm_sqr_avx2(row));
        const float denom = qn * rn;
        out[r] = denom > 0.0f ? dot_avx2(query, row) / denom : 0.0f;
    }
}

} // namespace apigen::kernels

#endif // x86_64
