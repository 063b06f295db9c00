#include "apigen/kernels/simd.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

using namespace apigen::kernels;

namespace {

std::vector<float> random_vec(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<float> d(-2.0f, 2.0f);
    std::vector<float> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

double dot_ref(const std::vector<float>& a, const std::vector<float>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
}

struct BackendGuard {
    ~BackendGuard() { reset_backend(); }
};

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar dot and norm match a double-precision reference") {
    std::mt19937 rng(7);
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7}, std::size_t{8},
                          std::size_t{9}, std::size_t{33}, std::size_t{257}}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        CHECK(dot_scalar(a, b) == doctest::Approx(dot_ref(a, b)).epsilon(1e-4));
        CHECK(norm_sqr_scalar(a) == doctest::Approx(dot_ref(a, a)).epsilon(1e-4));
    }
}

TEST_CASE("cosine_batch handles zero rows and unit vectors") {
    std::vector<float> query = {1.0f, 0.0f, 0.0f};
    std::vector<float> rows = {
        1.0f, 0.0f, 0.0f,  // identical
        0.0f, 1.0f, 0.0f,  // orthogonal
        -1.0f, 0.0f, 0.0f, // opposite
        0.0f, 0.0f, 0.0f,  // zero norm -> 0
    };
    std::vector<float> out(4, 42.0f);
    cosine_batch_scalar(query, rows.data(), 4, 3, out.data());
    CHECK(out[0] == doctest::Approx(1.0f));
    CHECK(out[1] == doctest::Approx(0.0f));
    CHECK(out[2] == doctest::Approx(-1.0f));
    CHECK(out[3] == 0.0f);
}

TEST_CASE("avx2 variants agree with scalar" *
          doctest::skip(!cpu_has_avx2())) {
#if defined(__x86_64__) || defined(_M_X64)
    std::mt19937 rng(11);
    for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{8}, std::size_t{15},
                          std::size_t{16}, std::size_t{64}, std::size_t{385}}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        CHECK(dot_avx2(a, b) == doctest::Approx(dot_scalar(a, b)).epsilon(1e-4));
        CHECK(norm_sqr_avx2(a) == doctest::Approx(norm_sqr_scalar(a)).epsilon(1e-4));
    }

    const std::size_t dims = 48, count = 37;
    auto query = random_vec(rng, dims);
    auto rows = random_vec(rng, dims * count);
    std::vector<float> got_scalar(count), got_avx2(count);
    cosine_batch_scalar(query, rows.data(), count, dims, got_scalar.data());
    cosine_batch_avx2(query, rows.data(), count, dims, got_avx2.data());
    for (std::size_t i = 0; i < count; ++i)
        CHECK(got_avx2[i] == doctest::Approx(got_scalar[i]).epsilon(1e-4));
#endif
}

TEST_CASE("force_backend routes the dispatched entry points") {
    BackendGuard guard;
    std::vector<float> a = {1.0f, 2.0f, 3.0f};
    std::vector<float> b = {4.0f, 5.0f, 6.0f};

    force_backend(Backend::scalar);
    CHECK(active_backend() == Backend::scalar);
    CHECK(dot(a, b) == doctest::Approx(32.0f));

    if (cpu_has_avx2()) {
        force_backend(Backend::avx2);
        CHECK(active_backend() == Backend::avx2);
        CHECK(dot(a, b) == doctest::Approx(32.0f));
        CHECK(norm_sqr(a) == doctest::Approx(14.0f));
    } else {
        CHECK_THROWS(force_backend(Backend::avx2));
    }
}

TEST_CASE("backend_name spells both variants") {
    CHECK(std::string(backend_name(Backend::scalar)) == "scalar");
    CHECK(std::string(backend_name(Backend::avx2)) == "avx2");
}

} // TEST_SUITE
