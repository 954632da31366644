#pragma once

// Data-parallel inner loops. Each kernel has a plain serial version, kept as
// the reference the OpenMP version is tested against, and a parallel version
// used by the library. Both produce bit-identical results: integer
// accumulations are order-free and floating reductions are merged in a fixed
// order after the parallel region.

#include <array>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <vector>

#include "bhe/image.hpp"

namespace bhe::kernels {

using LevelCounts = std::array<std::uint64_t, kGrayLevels>;
using LevelMap = std::array<std::uint8_t, kGrayLevels>;
using CandidateFn = std::function<double(int)>;

/// Per-candidate outcome of a scan; `failure` is set when the evaluator threw.
struct CandidateValues {
    std::vector<double> values;
    std::vector<std::exception_ptr> failures;
};

/// 11x11 Gaussian window (sigma 1.5) normalised to unit sum.
struct SsimWindow {
    static constexpr int kSize = 11;
    static constexpr double kSigma = 1.5;
    std::array<double, kSize * kSize> weights;

    static const SsimWindow& gaussian();
};

struct SsimConstants {
    double c1;
    double c2;
};

namespace serial {

LevelCounts histogram(std::span<const std::uint8_t> pixels);
void apply_lut(std::span<const std::uint8_t> src, const LevelMap& lut, std::span<std::uint8_t> dst);
std::uint64_t squared_error_sum(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
CandidateValues evaluate_candidates(int count, const CandidateFn& fn);
/// Mean of the per-window SSIM map over every fully-contained window position.
double ssim_mean(const GrayImage& a, const GrayImage& b, const SsimConstants& k);

}  // namespace serial

namespace parallel {

LevelCounts histogram(std::span<const std::uint8_t> pixels);
void apply_lut(std::span<const std::uint8_t> src, const LevelMap& lut, std::span<std::uint8_t> dst);
std::uint64_t squared_error_sum(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
/// `fn` is invoked concurrently for distinct candidates and must be pure.
CandidateValues evaluate_candidates(int count, const CandidateFn& fn);
double ssim_mean(const GrayImage& a, const GrayImage& b, const SsimConstants& k);

}  // namespace parallel

/// Worker threads available to the parallel kernels.
int max_threads();

}  // namespace bhe::kernels
