#pragma once

#include <array>
#include <string_view>

#include "bhe/image.hpp"

namespace bhe {

inline constexpr int kDefaultEmeBlock = 8;

/// Quality scores for one (original, enhanced) pair. `psnr` is +infinity for
/// identical images; `uiqi` is NaN when either image is constant.
struct MetricsReport {
    double ambe = 0.0;
    double sd = 0.0;
    double entropy = 0.0;
    double psnr = 0.0;
    double uiqi = 0.0;
    double eme_error = 0.0;
    double ssim = 0.0;
};

/// Stable column names, in MetricsReport field order.
inline constexpr std::array<std::string_view, 7> kMetricNames = {
    "ambe", "sd", "entropy", "psnr", "uiqi", "eme_error", "ssim",
};

double metric_value(const MetricsReport& r, std::size_t index);

/// Absolute mean brightness error |E(a) - E(b)|.
double ambe(const GrayImage& a, const GrayImage& b);
/// Population standard deviation of the gray levels.
double sd(const GrayImage& y);
/// Shannon entropy of the gray-level histogram, in bits.
double entropy(const GrayImage& y);
double mse(const GrayImage& a, const GrayImage& b);
double psnr(const GrayImage& a, const GrayImage& b);
/// Global universal image quality index with (N-1) sample statistics.
/// Throws ErrorCode::undefined_uiqi when either image is constant.
double uiqi(const GrayImage& a, const GrayImage& b);

/// Mean over a k x k grid of block x block tiles of (max + 1) / (min + 1),
/// k = floor(min(width, height) / block). Border remainders are ignored.
double eme(const GrayImage& y, int block = kDefaultEmeBlock);
double eme_error(const GrayImage& a, const GrayImage& b, int block = kDefaultEmeBlock);

/// Mean SSIM over sliding 11x11 Gaussian windows (sigma 1.5), K1 = 0.01,
/// K2 = 0.03, dynamic range 255. Images must be at least 11 pixels on each side.
double ssim(const GrayImage& a, const GrayImage& b);

/// Scores `enhanced` against `original`; sd and entropy describe `enhanced`.
MetricsReport evaluate(const GrayImage& original, const GrayImage& enhanced,
                       int eme_block = kDefaultEmeBlock);

}  // namespace bhe
