#include "apigen/kernels/simd.hpp"

#include "apigen/util.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace apigen::kernels {

namespace {

// -1 = undecided, else Backend value
std::atomic<int> g_backend{-1};

Backend detect() {
    if (const char* env = std::getenv("APIGEN_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0)
            return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend current() {
    int b = g_backend.load(std::memory_order_acquire);
    if (b < 0) {
        Backend d = detect();
        g_backend.store(static_cast<int>(d), std::memory_order_release);
        return d;
    }
    return static_cast<Backend>(b);
}

} // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active_backend() { return current(); }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

void force_backend(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2())
        throw Error("avx2 kernel backend requested but the CPU lacks AVX2");
    g_backend.store(static_cast<int>(b), std::memory_order_release);
}

void reset_backend() { g_backend.store(-1, std::memory_order_release); }

float dot(std::span<const float> a, std::span<const float> b) {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Backend::avx2) return dot_avx2(a, b);
#endif
    return dot_scalar(a, b);
}

float norm_sqr(std::span<const float> a) {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Backend::avx2) return norm_sqr_avx2(a);
#endif
    return norm_sqr_scalar(a);
}

void cosine_batch(std::span<const float> query, const float* rows, std::size_t count,
                  std::size_t dims, float* out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (current() == Backend::avx2) {
        cosine_batch_avx2(query, rows, count, dims, out);
        return;
    }
#endif
    cosine_batch_scalar(query, rows, count, dims, out);
}

} // namespace apigen::kernels
