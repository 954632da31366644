#include "bhe/clip_equalize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bhe/error.hpp"
#include "bhe/kernels.hpp"

namespace bhe {

TransformLut TransformLut::identity() {
    TransformLut lut;
    for (int i = 0; i < kGrayLevels; ++i) lut.map[i] = static_cast<std::uint8_t>(i);
    return lut;
}

PlateauLimit plateau_limit(const SubHistogram& s) {
    if (s.degenerate()) throw Error(ErrorCode::degenerate_sub_histogram, "degenerate sub-histogram");
    double sum = 0.0;
    for (double p : s.pdf) sum += p;
    return {sum / static_cast<double>(s.pdf.size())};
}

ClippedSubHistogram clip(const SubHistogram& s, PlateauLimit limit) {
    if (s.degenerate()) throw Error(ErrorCode::degenerate_sub_histogram, "degenerate sub-histogram");
    ClippedSubHistogram c;
    c.range = s.range;
    c.bins.resize(s.pdf.size());
    for (std::size_t k = 0; k < s.pdf.size(); ++k) {
        c.bins[k] = std::min(s.pdf[k], limit.value);
        c.mass += c.bins[k];
    }
    return c;
}

ClippedCdf clipped_cdf(const ClippedSubHistogram& c) {
    if (!(c.mass > 0.0)) {
        throw Error(ErrorCode::degenerate_clipped_histogram, "degenerate clipped histogram");
    }
    ClippedCdf cdf{c.range, std::vector<double>(c.bins.size())};
    double running = 0.0;
    for (std::size_t k = 0; k < c.bins.size(); ++k) {
        running += c.bins[k];
        cdf.values[k] = running / c.mass;
    }
    return cdf;
}

ClippedCdf plain_cdf(const SubHistogram& s) {
    const auto n = s.total();
    if (n == 0) throw Error(ErrorCode::degenerate_sub_histogram, "degenerate sub-histogram");
    ClippedCdf cdf{s.range, std::vector<double>(s.counts.size())};
    std::uint64_t running = 0;
    for (std::size_t k = 0; k < s.counts.size(); ++k) {
        running += s.counts[k];
        cdf.values[k] = static_cast<double>(running) / static_cast<double>(n);
    }
    return cdf;
}

TransformLut build_lut(const std::vector<std::optional<ClippedCdf>>& cdfs, const Partition& p) {
    if (cdfs.size() != p.size()) {
        throw Error(ErrorCode::partition_mismatch, "partition mismatch: " + std::to_string(cdfs.size()) +
                                                       " cdfs for " + std::to_string(p.size()) + " ranges");
    }
    TransformLut lut = TransformLut::identity();
    for (std::size_t j = 0; j < cdfs.size(); ++j) {
        if (!cdfs[j]) continue;
        const GrayRange r = p.ranges()[j];
        const ClippedCdf& cdf = *cdfs[j];
        if (cdf.range != r || cdf.values.size() != static_cast<std::size_t>(r.size())) {
            throw Error(ErrorCode::partition_mismatch, "partition mismatch at range " + std::to_string(j));
        }
        const double span = r.hi - r.lo;
        for (int i = r.lo; i <= r.hi; ++i) {
            const double target = r.lo + span * cdf.values[i - r.lo];
            // std::round rounds halves away from zero.
            const auto level = static_cast<int>(std::round(target));
            lut.map[i] = static_cast<std::uint8_t>(std::clamp(level, r.lo, r.hi));
        }
    }
    return lut;
}

GrayImage apply_lut(const GrayImage& img, const TransformLut& lut) {
    GrayImage out(img.width(), img.height());
    kernels::parallel::apply_lut(img.pixels(), lut.map, out.pixels());
    return out;
}

std::uint64_t mapped_weighted_sum(const Histogram& h, const TransformLut& lut) {
    std::uint64_t sum = 0;
    for (int i = 0; i < kGrayLevels; ++i) sum += static_cast<std::uint64_t>(lut.map[i]) * h.counts[i];
    return sum;
}

double lut_ambe(const Histogram& h, const TransformLut& lut) {
    const auto n = h.total();
    if (n == 0) throw Error(ErrorCode::empty_input, "empty input");
    const auto in = static_cast<std::int64_t>(h.weighted_sum());
    const auto out = static_cast<std::int64_t>(mapped_weighted_sum(h, lut));
    const auto diff = in > out ? in - out : out - in;
    return static_cast<double>(diff) / static_cast<double>(n);
}

TransformLut equalize_partition(const Histogram& h, const Partition& p, Clipping clipping) {
    std::vector<std::optional<ClippedCdf>> cdfs;
    cdfs.reserve(p.size());
    for (const auto& s : split(h, p)) {
        if (s.degenerate()) {
            cdfs.emplace_back(std::nullopt);
        } else if (clipping == Clipping::none) {
            cdfs.emplace_back(plain_cdf(s));
        } else {
            cdfs.emplace_back(clipped_cdf(clip(s, plateau_limit(s))));
        }
    }
    return build_lut(cdfs, p);
}

}  // namespace bhe
