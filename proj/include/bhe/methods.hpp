#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bhe/clip_equalize.hpp"
#include "bhe/histogram.hpp"
#include "bhe/image.hpp"

namespace bhe {

/// Enhancement pipelines. Declaration order is the column order of the
/// per-metric comparison tables: the three plateau-limited variants first,
/// then the classical baselines.
enum class MethodId { itsbpl, msbpl, mvsbpl, he, bbhe, dsihe, mmbebhe, bhepl, rlbhe };

inline constexpr std::array<MethodId, 9> kAllMethods = {
    MethodId::itsbpl, MethodId::msbpl, MethodId::mvsbpl, MethodId::he,    MethodId::bbhe,
    MethodId::dsihe,  MethodId::mmbebhe, MethodId::bhepl, MethodId::rlbhe,
};

std::string_view method_name(MethodId m) noexcept;
std::optional<MethodId> parse_method(std::string_view name);
/// Comma-separated list of every valid name, for usage messages.
std::string method_names();

struct EnhanceResult {
    GrayImage output;
    std::vector<int> thresholds;
    TransformLut lut;
    std::chrono::duration<double, std::milli> runtime{};
    /// Set when the input held a single gray level and was passed through.
    bool degenerate = false;

    /// Ranges the thresholds split the gray scale into (full range for HE).
    Partition partition() const { return Partition::from_thresholds(thresholds); }
};

/// Runs method `m`. Inputs with a single gray level come back unchanged with
/// `degenerate` set; every other input goes through the method's pipeline.
EnhanceResult enhance(const GrayImage& img, MethodId m);

// Shorthands for enhance(img, MethodId::...).
EnhanceResult he(const GrayImage& img);
EnhanceResult bbhe(const GrayImage& img);
EnhanceResult dsihe(const GrayImage& img);
EnhanceResult mmbebhe(const GrayImage& img);
EnhanceResult bhepl(const GrayImage& img);
EnhanceResult rlbhe(const GrayImage& img);
EnhanceResult itsbpl(const GrayImage& img);
EnhanceResult msbpl(const GrayImage& img);
EnhanceResult mvsbpl(const GrayImage& img);

/// Smallest t with CDF(t) >= 0.5, clamped to [0, 254].
int median_threshold(const Histogram& h);

}  // namespace bhe
