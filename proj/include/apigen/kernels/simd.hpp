#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace apigen::kernels {

enum class Backend { scalar, avx2 };

/// Backend picked at first use: AVX2 when the CPU supports it, else scalar.
/// APIGEN_KERNEL=scalar|avx2 in the environment overrides detection
/// (an avx2 request on an unsupported CPU falls back to scalar).
Backend active_backend();
const char* backend_name(Backend b);

/// Force a backend; used by the equivalence tests. Throws if avx2 is
/// requested on hardware without it.
void force_backend(Backend b);
void reset_backend(); // back to auto-detection

// Dispatched entry points. a and b must have equal length.
float dot(std::span<const float> a, std::span<const float> b);
float norm_sqr(std::span<const float> a);

/// Cosine of `query` against `count` rows of `rows` (row-major, `dims`
/// wide). Zero-norm rows score 0. `out` must hold `count` floats.
void cosine_batch(std::span<const float> query, const float* rows, std::size_t count,
                  std::size_t dims, float* out);

// Reference implementations, always available; the dispatched paths are
// equivalence-tested against these.
float dot_scalar(std::span<const float> a, std::span<const float> b);
float norm_sqr_scalar(std::span<const float> a);
void cosine_batch_scalar(std::span<const float> query, const float* rows, std::size_t count,
                         std::size_t dims, float* out);

bool cpu_has_avx2();

#if defined(__x86_64__) || defined(_M_X64)
float dot_avx2(std::span<const float> a, std::span<const float> b);
float norm_sqr_avx2(std::span<const float> a);
void cosine_batch_avx2(std::span<const float> query, const float* rows, std::size_t count,
                       std::size_t dims, float* out);
#endif

} // namespace apigen::kernels
