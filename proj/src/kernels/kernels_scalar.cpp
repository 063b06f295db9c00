#include "apigen/kernels/simd.hpp"

#include <cmath>

namespace apigen::kernels {

float dot_scalar(std::span<const float> a, std::span<const float> b) {
    float acc = 0.0f;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

float norm_sqr_scalar(std::span<const float> a) {
    float acc = 0.0f;
    for (float v : a) acc += v * v;
    return acc;
}

void cosine_batch_scalar(std::span<const float> query, const float* rows, std::size_t count,
                         std::size_t dims, float* out) {
    const float qn = std::sqrt(norm_sqr_scalar(query));
    for (std::size_t r = 0; r < count; ++r) {
        std::span<const float> row(rows + r * dims, dims);
        const float rn = std::sqrt(norm_sqr_scalar(row));
        const float denom = qn * rn;
        out[r] = denom > 0.0f ? dot_scalar(query, row) / denom : 0.0f;
    }
}

} // namespace apigen::kernels
