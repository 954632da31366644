#include <doctest.h>

#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bhe/kernels.hpp"
#include "oracles.hpp"

using namespace bhe;

namespace {

struct ThreadScope {
    explicit ThreadScope(int n) {
#ifdef _OPENMP
        previous = omp_get_max_threads();
        omp_set_num_threads(n);
#else
        (void)n;
#endif
    }
    ~ThreadScope() {
#ifdef _OPENMP
        omp_set_num_threads(previous);
#endif
    }
    int previous = 1;
};

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
    ThreadScope threads(4);
    std::mt19937_64 rng(123);
    const kernels::SsimConstants k{6.5025, 58.5225};
    for (int iter = 0; iter < 12; ++iter) {
        const int w = 11 + iter * 7, h = 11 + iter * 5;
        const auto a = oracle::random_image(rng, w, h);
        const auto b = oracle::random_image(rng, w, h, iter, 255 - iter);

        CHECK(kernels::serial::histogram(a.pixels()) == kernels::parallel::histogram(a.pixels()));
        CHECK(kernels::serial::squared_error_sum(a.pixels(), b.pixels()) ==
              kernels::parallel::squared_error_sum(a.pixels(), b.pixels()));

        kernels::LevelMap lut{};
        for (int i = 0; i < 256; ++i) lut[i] = static_cast<std::uint8_t>((i * 37 + iter) & 0xff);
        GrayImage s(w, h), p(w, h);
        kernels::serial::apply_lut(a.pixels(), lut, s.pixels());
        kernels::parallel::apply_lut(a.pixels(), lut, p.pixels());
        CHECK(s == p);

        CHECK(kernels::serial::ssim_mean(a, b, k) == kernels::parallel::ssim_mean(a, b, k));
    }
}

TEST_CASE("candidate evaluation keeps values and failures in slot order") {
    ThreadScope threads(4);
    const auto fn = [](int t) -> double {
        if (t % 50 == 7) throw std::runtime_error("bad " + std::to_string(t));
        return t * 0.5;
    };
    const auto s = kernels::serial::evaluate_candidates(255, fn);
    const auto p = kernels::parallel::evaluate_candidates(255, fn);
    CHECK(s.values == p.values);
    for (int t = 0; t < 255; ++t) {
        CHECK(static_cast<bool>(s.failures[t]) == (t % 50 == 7));
        CHECK(static_cast<bool>(p.failures[t]) == (t % 50 == 7));
    }
}

TEST_CASE("ssim window is a normalised Gaussian") {
    const auto& w = kernels::SsimWindow::gaussian().weights;
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w[5 * 11 + 5] == *std::max_element(w.begin(), w.end()));
    CHECK(w[0] == doctest::Approx(w[10 * 11 + 10]).epsilon(1e-15));
}
