#include "bhe/histogram.hpp"

#include <numeric>
#include <string>

#include "bhe/error.hpp"
#include "bhe/kernels.hpp"

namespace bhe {

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t Histogram::weighted_sum() const noexcept {
    std::uint64_t sum = 0;
    for (int k = 0; k < kGrayLevels; ++k) sum += static_cast<std::uint64_t>(k) * counts[k];
    return sum;
}

int Histogram::occupied_levels() const noexcept {
    int n = 0;
    for (auto c : counts) n += c > 0 ? 1 : 0;
    return n;
}

std::uint64_t SubHistogram::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Partition::Partition(std::vector<GrayRange> ranges) : ranges_(std::move(ranges)) {
    if (ranges_.empty()) throw Error(ErrorCode::invalid_partition, "partition has no ranges");
    int next = 0;
    for (const auto& r : ranges_) {
        if (r.lo != next || r.hi < r.lo || r.hi > kMaxGray) {
            throw Error(ErrorCode::invalid_partition,
                        "partition ranges must tile [0, 255] in order; bad range [" + std::to_string(r.lo) +
                            ", " + std::to_string(r.hi) + "]");
        }
        next = r.hi + 1;
    }
    if (next != kGrayLevels) {
        throw Error(ErrorCode::invalid_partition, "partition stops at " + std::to_string(next - 1));
    }
}

Partition Partition::from_thresholds(const std::vector<int>& thresholds) {
    std::vector<GrayRange> ranges;
    int lo = 0;
    for (int t : thresholds) {
        if (t < lo || t >= kMaxGray) {
            throw Error(ErrorCode::invalid_partition, "threshold " + std::to_string(t) + " out of order or range");
        }
        ranges.push_back({lo, t});
        lo = t + 1;
    }
    ranges.push_back({lo, kMaxGray});
    return Partition(std::move(ranges));
}

Partition Partition::full_range() { return Partition({{0, kMaxGray}}); }

std::size_t Partition::index_of(int level) const {
    for (std::size_t j = 0; j < ranges_.size(); ++j) {
        if (ranges_[j].contains(level)) return j;
    }
    throw Error(ErrorCode::invalid_partition, "level " + std::to_string(level) + " outside [0, 255]");
}

Histogram compute_histogram(const GrayImage& img) {
    return Histogram{kernels::parallel::histogram(img.pixels())};
}

double mean_brightness(const Histogram& h) {
    const auto n = h.total();
    if (n == 0) throw Error(ErrorCode::empty_input, "empty input");
    return static_cast<double>(h.weighted_sum()) / static_cast<double>(n);
}

SubHistogram sub_histogram(const Histogram& h, GrayRange range) {
    SubHistogram s;
    s.range = range;
    s.counts.assign(h.counts.begin() + range.lo, h.counts.begin() + range.hi + 1);
    s.pdf.assign(s.counts.size(), 0.0);
    const auto n = s.total();
    if (n > 0) {
        for (std::size_t k = 0; k < s.counts.size(); ++k) {
            s.pdf[k] = static_cast<double>(s.counts[k]) / static_cast<double>(n);
        }
    }
    return s;
}

std::vector<SubHistogram> split(const Histogram& h, const Partition& p) {
    std::vector<SubHistogram> parts;
    parts.reserve(p.size());
    for (const auto& r : p.ranges()) parts.push_back(sub_histogram(h, r));
    return parts;
}

}  // namespace bhe
