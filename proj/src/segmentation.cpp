#include "bhe/segmentation.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "bhe/error.hpp"
#include "bhe/kernels.hpp"

namespace bhe {

namespace {

constexpr int kCandidateCount = kMaxGray;  // thresholds 0..254

// Running pixel count and level-weighted sum up to and including each level.
struct PrefixSums {
    std::array<std::uint64_t, kGrayLevels> count{};
    std::array<std::uint64_t, kGrayLevels> weighted{};

    explicit PrefixSums(const Histogram& h) {
        std::uint64_t c = 0, w = 0;
        for (int k = 0; k < kGrayLevels; ++k) {
            c += h.counts[k];
            w += static_cast<std::uint64_t>(k) * h.counts[k];
            count[k] = c;
            weighted[k] = w;
        }
    }

    // Class holding levels (lo, hi]; lo = -1 means from level 0.
    std::uint64_t count_between(int lo, int hi) const { return count[hi] - (lo < 0 ? 0 : count[lo]); }
    std::uint64_t weighted_between(int lo, int hi) const {
        return weighted[hi] - (lo < 0 ? 0 : weighted[lo]);
    }
};

// W * (mu_class - mu)^2 for one class; empty classes contribute nothing.
double class_term(std::uint64_t n, std::uint64_t s, double total, double mean) {
    if (n == 0) return 0.0;
    const double w = static_cast<double>(n) / total;
    const double d = static_cast<double>(s) / static_cast<double>(n) - mean;
    return w * (d * d);
}

void require_levels(const Histogram& h, int needed) {
    if (h.total() == 0) throw Error(ErrorCode::empty_input, "empty input");
    if (h.occupied_levels() < needed) {
        throw Error(ErrorCode::degenerate_histogram,
                    "degenerate histogram: need " + std::to_string(needed) + " occupied levels, found " +
                        std::to_string(h.occupied_levels()));
    }
}

}  // namespace

ThresholdResult mean_threshold(const Histogram& h) {
    const auto n = h.total();
    if (n == 0) throw Error(ErrorCode::empty_input, "empty input");
    // Integer floor division keeps the threshold exact.
    const auto t = static_cast<int>(h.weighted_sum() / n);
    return {{std::min(t, kMaxGray - 1)}, mean_brightness(h)};
}

ThresholdResult otsu_threshold(const Histogram& h) {
    require_levels(h, 2);
    const PrefixSums p(h);
    const double total = static_cast<double>(p.count[kMaxGray]);
    const double mean = static_cast<double>(p.weighted[kMaxGray]) / total;

    int best_t = 0;
    double best = -1.0;
    for (int t = 0; t < kCandidateCount; ++t) {
        const double v = class_term(p.count_between(-1, t), p.weighted_between(-1, t), total, mean) +
                         class_term(p.count_between(t, kMaxGray), p.weighted_between(t, kMaxGray), total, mean);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    return {{best_t}, best};
}

ThresholdResult otsu_two_thresholds(const Histogram& h) {
    require_levels(h, 3);
    const PrefixSums p(h);
    const double total = static_cast<double>(p.count[kMaxGray]);
    const double mean = static_cast<double>(p.weighted[kMaxGray]) / total;

    int best_a = 0, best_b = 1;
    double best = -1.0;
    for (int a = 0; a < kCandidateCount - 1; ++a) {
        const double low = class_term(p.count_between(-1, a), p.weighted_between(-1, a), total, mean);
        for (int b = a + 1; b < kCandidateCount; ++b) {
            const double v = low + class_term(p.count_between(a, b), p.weighted_between(a, b), total, mean) +
                             class_term(p.count_between(b, kMaxGray), p.weighted_between(b, kMaxGray), total, mean);
            if (v > best) {
                best = v;
                best_a = a;
                best_b = b;
            }
        }
    }
    return {{best_a, best_b}, best};
}

ThresholdResult search_min_ambe_threshold(const Histogram& h, const AmbeEvaluator& evaluator) {
    if (h.total() == 0) throw Error(ErrorCode::empty_input, "empty input");

    const auto scan = kernels::parallel::evaluate_candidates(kCandidateCount, evaluator);

    // Reduction runs in threshold order so the smallest t wins regardless of
    // which candidate finished first.
    int best_t = -1;
    double best = 0.0;
    for (int t = 0; t < kCandidateCount; ++t) {
        if (scan.failures[t]) {
            std::string what = "unknown error";
            try {
                std::rethrow_exception(scan.failures[t]);
            } catch (const std::exception& e) {
                what = e.what();
            } catch (...) {
            }
            throw Error(ErrorCode::evaluator_failure,
                        "AMBE evaluator failed at threshold " + std::to_string(t) + ": " + what);
        }
        if (best_t < 0 || scan.values[t] < best) {
            best = scan.values[t];
            best_t = t;
        }
    }
    return {{best_t}, best};
}

}  // namespace bhe
