#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bhe/image.hpp"

namespace bhe {

/// Pixel counts per gray level.
struct Histogram {
    std::array<std::uint64_t, kGrayLevels> counts{};

    std::uint64_t total() const noexcept;
    /// Sum of level * count; exact, used wherever means must compare exactly.
    std::uint64_t weighted_sum() const noexcept;
    int occupied_levels() const noexcept;

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Inclusive gray-level range.
struct GrayRange {
    int lo = 0;
    int hi = kMaxGray;

    int size() const noexcept { return hi - lo + 1; }
    bool contains(int level) const noexcept { return lo <= level && level <= hi; }

    friend bool operator==(const GrayRange&, const GrayRange&) = default;
};

/// Counts and within-range pdf for one contiguous slice of a histogram.
/// A slice holding no pixels is degenerate and carries an all-zero pdf.
struct SubHistogram {
    GrayRange range;
    std::vector<std::uint64_t> counts;
    std::vector<double> pdf;

    std::uint64_t total() const noexcept;
    bool degenerate() const noexcept { return total() == 0; }
};

/// Disjoint, sorted, contiguous ranges whose union is exactly [0, 255].
class Partition {
public:
    explicit Partition(std::vector<GrayRange> ranges);

    /// Threshold t closes a range at t; the next one opens at t + 1.
    /// Thresholds must be strictly increasing and lie in [0, 254].
    static Partition from_thresholds(const std::vector<int>& thresholds);
    static Partition full_range();

    const std::vector<GrayRange>& ranges() const noexcept { return ranges_; }
    std::size_t size() const noexcept { return ranges_.size(); }
    std::size_t index_of(int level) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<GrayRange> ranges_;
};

Histogram compute_histogram(const GrayImage& img);

/// Mean gray level. Throws ErrorCode::empty_input on an empty histogram.
double mean_brightness(const Histogram& h);

std::vector<SubHistogram> split(const Histogram& h, const Partition& p);
SubHistogram sub_histogram(const Histogram& h, GrayRange range);

}  // namespace bhe
