#pragma once

#include <functional>
#include <vector>

#include "bhe/histogram.hpp"

namespace bhe {

/// One or two strictly increasing thresholds in [0, 254] together with the
/// value of the criterion that selected them.
struct ThresholdResult {
    std::vector<int> thresholds;
    double objective = 0.0;
};

/// floor(mean), clamped to [0, 254]; objective is the mean itself.
ThresholdResult mean_threshold(const Histogram& h);

/// Single threshold maximising the two-class between-class variance.
/// Needs at least two occupied levels (ErrorCode::degenerate_histogram).
ThresholdResult otsu_threshold(const Histogram& h);

/// Pair (a, b), 0 <= a < b < 255, maximising the three-class between-class
/// variance. Needs at least three occupied levels.
ThresholdResult otsu_two_thresholds(const Histogram& h);

/// Maps a candidate threshold to the absolute mean brightness error of
/// whatever pipeline the caller runs at that threshold. Must be pure: it is
/// called concurrently for different thresholds.
using AmbeEvaluator = std::function<double(int)>;

/// Exhaustive scan of t in [0, 254]; smallest t wins ties. Evaluator failures
/// are rethrown as ErrorCode::evaluator_failure naming the threshold.
ThresholdResult search_min_ambe_threshold(const Histogram& h, const AmbeEvaluator& evaluator);

}  // namespace bhe
