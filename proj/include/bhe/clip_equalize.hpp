#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bhe/histogram.hpp"
#include "bhe/image.hpp"

namespace bhe {

/// Ceiling applied to a sub-range pdf before equalization.
struct PlateauLimit {
    double value = 0.0;
};

/// pdf of one sub-range with every bin capped at the plateau. The clipped
/// excess is discarded, so `mass` is at most 1.
struct ClippedSubHistogram {
    GrayRange range;
    std::vector<double> bins;
    double mass = 0.0;
};

/// Cumulative distribution over one sub-range, normalised so the last entry is 1.
struct ClippedCdf {
    GrayRange range;
    std::vector<double> values;
};

/// Output level for every input level.
struct TransformLut {
    std::array<std::uint8_t, kGrayLevels> map{};

    static TransformLut identity();
    std::uint8_t operator()(int level) const noexcept { return map[level]; }

    friend bool operator==(const TransformLut&, const TransformLut&) = default;
};

/// Average of the sub-range pdf: (1/m) * sum(pdf) with m bins, i.e. 1/m for a
/// non-degenerate slice. Throws ErrorCode::degenerate_sub_histogram otherwise.
PlateauLimit plateau_limit(const SubHistogram& s);

ClippedSubHistogram clip(const SubHistogram& s, PlateauLimit limit);

/// Throws ErrorCode::degenerate_clipped_histogram when mass is zero.
ClippedCdf clipped_cdf(const ClippedSubHistogram& c);

/// Unclipped cdf of a sub-range (plain equalization within the range).
ClippedCdf plain_cdf(const SubHistogram& s);

/// Maps level i of range j to round(lo_j + (hi_j - lo_j) * C_j(i)), clamped to
/// the range. A missing cdf marks a degenerate range, which maps to itself.
TransformLut build_lut(const std::vector<std::optional<ClippedCdf>>& cdfs, const Partition& p);

GrayImage apply_lut(const GrayImage& img, const TransformLut& lut);

/// Mean output level implied by pushing histogram `h` through `lut`, as the
/// exact integer sum of level * count (divide by h.total() for the mean).
std::uint64_t mapped_weighted_sum(const Histogram& h, const TransformLut& lut);

/// |E(lut(I)) - E(I)| computed from the histogram alone.
double lut_ambe(const Histogram& h, const TransformLut& lut);

/// Whether the cdf for each range is taken before or after plateau clipping.
enum class Clipping { none, plateau };

/// split -> (plateau -> clip) -> cdf per range -> lut. Degenerate ranges map
/// to themselves.
TransformLut equalize_partition(const Histogram& h, const Partition& p, Clipping clipping);

}  // namespace bhe
