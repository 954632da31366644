#include "bhe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bhe/error.hpp"
#include "bhe/histogram.hpp"
#include "bhe/kernels.hpp"

namespace bhe {

namespace {

void require_same_shape(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b)) {
        throw Error(ErrorCode::dimension_mismatch,
                    "dimension mismatch: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                        " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
    }
}

double pixel_sum(const GrayImage& img) {
    std::uint64_t sum = 0;
    for (auto v : img.pixels()) sum += v;
    return static_cast<double>(sum);
}

constexpr double kDynamicRange = 255.0;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

}  // namespace

double metric_value(const MetricsReport& r, std::size_t index) {
    switch (index) {
        case 0: return r.ambe;
        case 1: return r.sd;
        case 2: return r.entropy;
        case 3: return r.psnr;
        case 4: return r.uiqi;
        case 5: return r.eme_error;
        case 6: return r.ssim;
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

double ambe(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    const auto ha = compute_histogram(a);
    const auto hb = compute_histogram(b);
    const auto sa = static_cast<std::int64_t>(ha.weighted_sum());
    const auto sb = static_cast<std::int64_t>(hb.weighted_sum());
    const auto diff = sa > sb ? sa - sb : sb - sa;
    return static_cast<double>(diff) / static_cast<double>(a.size());
}

double sd(const GrayImage& y) {
    const auto h = compute_histogram(y);
    const double n = static_cast<double>(h.total());
    const double mean = mean_brightness(h);
    double var = 0.0;
    for (int k = 0; k < kGrayLevels; ++k) {
        if (h.counts[k] == 0) continue;
        const double d = k - mean;
        var += d * d * (static_cast<double>(h.counts[k]) / n);
    }
    return std::sqrt(var);
}

double entropy(const GrayImage& y) {
    const auto h = compute_histogram(y);
    const double n = static_cast<double>(h.total());
    double e = 0.0;
    for (auto c : h.counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        e -= p * std::log2(p);
    }
    return e;
}

double mse(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    return static_cast<double>(kernels::parallel::squared_error_sum(a.pixels(), b.pixels())) /
           static_cast<double>(a.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
    const double e = mse(a, b);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kDynamicRange * kDynamicRange / e);
}

double uiqi(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    const double n = static_cast<double>(a.size());
    const double mu_a = pixel_sum(a) / n;
    const double mu_b = pixel_sum(b) / n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const double da = pa[i] - mu_a;
        const double db = pb[i] - mu_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw Error(ErrorCode::undefined_uiqi, "undefined UIQI: constant image");
    const double var_a = saa / (n - 1.0);
    const double var_b = sbb / (n - 1.0);
    const double cov = sab / (n - 1.0);
    return 4.0 * cov * mu_a * mu_b / ((var_a + var_b) * (mu_a * mu_a + mu_b * mu_b));
}

double eme(const GrayImage& y, int block) {
    if (block < 1) throw Error(ErrorCode::image_too_small, "EME block size must be positive");
    const int k = std::min(y.width(), y.height()) / block;
    if (k == 0) {
        throw Error(ErrorCode::image_too_small,
                    "image too small for EME block " + std::to_string(block));
    }
    double sum = 0.0;
    for (int n = 0; n < k; ++n) {
        for (int m = 0; m < k; ++m) {
            int lo = kMaxGray, hi = 0;
            for (int yy = n * block; yy < (n + 1) * block; ++yy) {
                for (int xx = m * block; xx < (m + 1) * block; ++xx) {
                    const int v = y.at(xx, yy);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            sum += (hi + 1.0) / (lo + 1.0);
        }
    }
    return sum / (static_cast<double>(k) * k);
}

double eme_error(const GrayImage& a, const GrayImage& b, int block) {
    return std::abs(eme(b, block) - eme(a, block));
}

double ssim(const GrayImage& a, const GrayImage& b) {
    require_same_shape(a, b);
    constexpr int w = kernels::SsimWindow::kSize;
    if (a.width() < w || a.height() < w) {
        throw Error(ErrorCode::image_too_small, "image too small for SSIM");
    }
    const kernels::SsimConstants k{(kSsimK1 * kDynamicRange) * (kSsimK1 * kDynamicRange),
                                   (kSsimK2 * kDynamicRange) * (kSsimK2 * kDynamicRange)};
    return kernels::parallel::ssim_mean(a, b, k);
}

MetricsReport evaluate(const GrayImage& original, const GrayImage& enhanced, int eme_block) {
    require_same_shape(original, enhanced);
    MetricsReport r;
    r.ambe = ambe(original, enhanced);
    r.sd = sd(enhanced);
    r.entropy = entropy(enhanced);
    r.psnr = psnr(original, enhanced);
    try {
        r.uiqi = uiqi(original, enhanced);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::undefined_uiqi) throw;
        r.uiqi = std::numeric_limits<double>::quiet_NaN();
    }
    r.eme_error = eme_error(original, enhanced, eme_block);
    r.ssim = ssim(original, enhanced);
    return r;
}

}  // namespace bhe
