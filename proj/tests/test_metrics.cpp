#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bhe/kernels.hpp"
#include "bhe/metrics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bhe;

namespace {

// Straight 2-D evaluation of every 11x11 window.
double ssim_direct(const GrayImage& a, const GrayImage& b) {
    const auto& w = kernels::SsimWindow::gaussian().weights;
    const double c1 = (0.01 * 255) * (0.01 * 255), c2 = (0.03 * 255) * (0.03 * 255);
    double total = 0.0;
    int windows = 0;
    for (int y0 = 0; y0 + 11 <= a.height(); ++y0) {
        for (int x0 = 0; x0 + 11 <= a.width(); ++x0) {
            double ma = 0, mb = 0;
            for (int j = 0; j < 11; ++j)
                for (int i = 0; i < 11; ++i) {
                    ma += w[j * 11 + i] * a.at(x0 + i, y0 + j);
                    mb += w[j * 11 + i] * b.at(x0 + i, y0 + j);
                }
            double va = 0, vb = 0, cov = 0;
            for (int j = 0; j < 11; ++j)
                for (int i = 0; i < 11; ++i) {
                    const double da = a.at(x0 + i, y0 + j) - ma, db = b.at(x0 + i, y0 + j) - mb;
                    va += w[j * 11 + i] * da * da;
                    vb += w[j * 11 + i] * db * db;
                    cov += w[j * 11 + i] * da * db;
                }
            total += (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++windows;
        }
    }
    return total / windows;
}

double uiqi_direct(const GrayImage& a, const GrayImage& b) {
    const double n = static_cast<double>(a.size());
    const double ma = oracle::pixel_mean(a), mb = oracle::pixel_mean(b);
    double va = 0, vb = 0, cov = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        va += (a.pixels()[i] - ma) * (a.pixels()[i] - ma);
        vb += (b.pixels()[i] - mb) * (b.pixels()[i] - mb);
        cov += (a.pixels()[i] - ma) * (b.pixels()[i] - mb);
    }
    va /= n - 1;
    vb /= n - 1;
    cov /= n - 1;
    // Product of correlation, luminance and contrast terms.
    return cov / std::sqrt(va * vb) * (2 * ma * mb / (ma * ma + mb * mb)) *
           (2 * std::sqrt(va) * std::sqrt(vb) / (va + vb));
}

GrayImage two_level(int n) {
    std::vector<std::uint8_t> px(2 * n * 2);
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = (i % 2) ? 255 : 0;
    return GrayImage(2 * n, 2, px);
}

}  // namespace

TEST_CASE("ambe") {
    std::mt19937_64 rng(1);
    const auto a = oracle::random_image(rng, 20, 20);
    CHECK(ambe(a, a) == 0.0);
    CHECK(ambe(GrayImage(4, 4, 100), GrayImage(4, 4, 98)) == 2.0);
    CHECK(ambe(GrayImage(2, 2, {0, 0, 255, 255}), GrayImage(2, 2, 127)) == 0.5);
    CHECK_BHE_ERROR(ambe(GrayImage(2, 2), GrayImage(2, 3)), ErrorCode::dimension_mismatch);
}

TEST_CASE("sd") {
    CHECK(sd(GrayImage(5, 5, 42)) == 0.0);
    CHECK(sd(two_level(8)) == 127.5);
    CHECK(sd(oracle::ramp_image()) == doctest::Approx(std::sqrt((256.0 * 256.0 - 1.0) / 12.0)).epsilon(1e-12));
}

TEST_CASE("entropy") {
    CHECK(entropy(GrayImage(5, 5, 42)) == 0.0);
    CHECK(entropy(oracle::ramp_image(3)) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(entropy(two_level(5)) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(4);
    auto img = oracle::random_image(rng, 32, 16);
    const double before = entropy(img);
    auto px = img.pixels();
    std::shuffle(px.begin(), px.end(), rng);
    CHECK(entropy(img) == before);
}

TEST_CASE("psnr") {
    std::mt19937_64 rng(2);
    const auto a = oracle::random_image(rng, 16, 16, 1, 254);
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(a, a) > 0);

    auto b = a;
    for (auto& p : b.pixels()) p = static_cast<std::uint8_t>(p + 1);
    CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(65025.0)).epsilon(1e-12));
    CHECK(psnr(a, b) == doctest::Approx(48.1308).epsilon(1e-5));
    CHECK(psnr(GrayImage(3, 3, 0), GrayImage(3, 3, 255)) == 0.0);
}

TEST_CASE("uiqi") {
    std::mt19937_64 rng(3);
    const auto a = oracle::random_image(rng, 40, 30);
    CHECK(uiqi(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    const auto t = two_level(6);
    auto inv = t;
    for (auto& p : inv.pixels()) p = static_cast<std::uint8_t>(255 - p);
    CHECK(uiqi(t, inv) == doctest::Approx(-1.0).epsilon(1e-12));

    auto one_off = a;
    one_off.at(3, 3) = static_cast<std::uint8_t>(one_off.at(3, 3) ^ 0x80);
    const double q = uiqi(a, one_off);
    CHECK(q < 1.0);
    CHECK(q > 0.99);

    const auto b = oracle::random_image(rng, 40, 30, 30, 200);
    CHECK(uiqi(a, b) == doctest::Approx(uiqi_direct(a, b)).epsilon(1e-10));
    CHECK(uiqi(a, b) == doctest::Approx(uiqi(b, a)).epsilon(1e-14));
    CHECK_BHE_ERROR(uiqi(a, GrayImage(40, 30, 9)), ErrorCode::undefined_uiqi);
}

TEST_CASE("eme") {
    CHECK(eme(GrayImage(32, 32, 77), 8) == 1.0);
    CHECK(eme(GrayImage(2, 2, {0, 255, 0, 255}), 2) == 256.0);
    std::mt19937_64 rng(5);
    const auto a = oracle::random_image(rng, 37, 29);
    CHECK(eme_error(a, a, 8) == 0.0);

    // 3x3 grid of 8x8 tiles; the 5-pixel border remainder is ignored.
    auto b = GrayImage(29, 40, 10);
    b.at(28, 39) = 255;
    CHECK(eme(b, 8) == 1.0);
    b.at(0, 0) = 65;
    CHECK(eme(b, 8) == doctest::Approx((66.0 / 11.0 + 8.0) / 9.0));
    CHECK(eme_error(GrayImage(29, 40, 10), b, 8) == doctest::Approx((66.0 / 11.0 + 8.0) / 9.0 - 1.0));
    CHECK_BHE_ERROR(eme(GrayImage(4, 4), 8), ErrorCode::image_too_small);
}

TEST_CASE("ssim") {
    std::mt19937_64 rng(6);
    const auto a = oracle::random_image(rng, 40, 33);
    const auto b = oracle::random_image(rng, 40, 33, 20, 220);
    CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
    CHECK(ssim(a, b) == doctest::Approx(ssim_direct(a, b)).epsilon(1e-9));

    const double c1 = (0.01 * 255) * (0.01 * 255);
    CHECK(ssim(GrayImage(16, 16, 0), GrayImage(16, 16, 255)) == doctest::Approx(c1 / (65025.0 + c1)).epsilon(1e-9));
    CHECK_BHE_ERROR(ssim(GrayImage(10, 40), GrayImage(10, 40)), ErrorCode::image_too_small);
}

TEST_CASE("metric bounds on random pairs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        const auto a = oracle::random_image(rng, 24, 24, 0, 60 + 6 * i);
        const auto b = oracle::random_image(rng, 24, 24, 3 * i, 255);
        const auto r = evaluate(a, b);
        CHECK(r.ambe >= 0.0);
        CHECK(r.ambe <= 255.0);
        CHECK(r.psnr >= 0.0);
        CHECK(r.entropy >= 0.0);
        CHECK(r.entropy <= 8.0);
        CHECK(r.ssim >= -1.0);
        CHECK(r.ssim <= 1.0);
        CHECK(r.uiqi >= -1.0);
        CHECK(r.uiqi <= 1.0);
        CHECK(r.eme_error == eme_error(b, a));
        CHECK(r.psnr == psnr(b, a));
        CHECK(r.ambe == ambe(b, a));
    }
}

TEST_CASE("evaluate marks undefined uiqi as NaN") {
    const GrayImage flat(16, 16, 50);
    const auto r = evaluate(flat, flat);
    CHECK(std::isnan(r.uiqi));
    CHECK(std::isinf(r.psnr));
    CHECK(r.ambe == 0.0);
    CHECK(r.ssim == 1.0);
    CHECK(metric_value(r, 0) == r.ambe);
    CHECK(metric_value(r, 6) == r.ssim);
}
