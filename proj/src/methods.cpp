#include "bhe/methods.hpp"

#include <algorithm>

#include "bhe/error.hpp"
#include "bhe/segmentation.hpp"

namespace bhe {

namespace {

struct MethodEntry {
    MethodId id;
    std::string_view name;
};

constexpr std::array<MethodEntry, 9> kMethodTable = {{
    {MethodId::itsbpl, "itsbpl"},
    {MethodId::msbpl, "msbpl"},
    {MethodId::mvsbpl, "mvsbpl"},
    {MethodId::he, "he"},
    {MethodId::bbhe, "bbhe"},
    {MethodId::dsihe, "dsihe"},
    {MethodId::mmbebhe, "mmbebhe"},
    {MethodId::bhepl, "bhepl"},
    {MethodId::rlbhe, "rlbhe"},
}};

struct Plan {
    std::vector<int> thresholds;
    TransformLut lut;
};

Plan bi_equalize(const Histogram& h, std::vector<int> thresholds, Clipping clipping) {
    const auto p = Partition::from_thresholds(thresholds);
    return {std::move(thresholds), equalize_partition(h, p, clipping)};
}

// Exhaustive threshold scan minimising the AMBE of the bi-equalization at t.
Plan min_ambe_bi_equalize(const Histogram& h, Clipping clipping) {
    const auto best = search_min_ambe_threshold(h, [&h, clipping](int t) {
        return lut_ambe(h, equalize_partition(h, Partition::from_thresholds({t}), clipping));
    });
    return bi_equalize(h, best.thresholds, clipping);
}

Plan plan_for(const Histogram& h, MethodId m) {
    switch (m) {
        case MethodId::he:
            return {{}, equalize_partition(h, Partition::full_range(), Clipping::none)};
        case MethodId::bbhe:
            return bi_equalize(h, mean_threshold(h).thresholds, Clipping::none);
        case MethodId::dsihe:
            return bi_equalize(h, {median_threshold(h)}, Clipping::none);
        case MethodId::mmbebhe:
            return min_ambe_bi_equalize(h, Clipping::none);
        case MethodId::rlbhe:
            return bi_equalize(h, otsu_threshold(h).thresholds, Clipping::none);
        // BHEPL and MSBPL share the plateau engine at the mean threshold.
        case MethodId::bhepl:
        case MethodId::msbpl:
            return bi_equalize(h, mean_threshold(h).thresholds, Clipping::plateau);
        case MethodId::itsbpl:
            return min_ambe_bi_equalize(h, Clipping::plateau);
        case MethodId::mvsbpl:
            if (h.occupied_levels() < 3) return bi_equalize(h, mean_threshold(h).thresholds, Clipping::plateau);
            return bi_equalize(h, otsu_two_thresholds(h).thresholds, Clipping::plateau);
    }
    throw Error(ErrorCode::unknown_method, "unknown method");
}

}  // namespace

std::string_view method_name(MethodId m) noexcept {
    for (const auto& e : kMethodTable)
        if (e.id == m) return e.name;
    return "unknown";
}

std::optional<MethodId> parse_method(std::string_view name) {
    for (const auto& e : kMethodTable)
        if (e.name == name) return e.id;
    return std::nullopt;
}

std::string method_names() {
    std::string out;
    for (const auto& e : kMethodTable) {
        if (!out.empty()) out += ", ";
        out += e.name;
    }
    return out;
}

int median_threshold(const Histogram& h) {
    const auto n = h.total();
    if (n == 0) throw Error(ErrorCode::empty_input, "empty input");
    std::uint64_t running = 0;
    for (int t = 0; t < kGrayLevels; ++t) {
        running += h.counts[t];
        // CDF(t) >= 0.5, kept in integers.
        if (2 * running >= n) return std::min(t, kMaxGray - 1);
    }
    return kMaxGray - 1;
}

EnhanceResult enhance(const GrayImage& img, MethodId m) {
    const auto start = std::chrono::steady_clock::now();
    const Histogram h = compute_histogram(img);

    EnhanceResult result{img, {}, TransformLut::identity()};
    if (h.occupied_levels() < 2) {
        result.degenerate = true;
    } else {
        auto plan = plan_for(h, m);
        result.thresholds = std::move(plan.thresholds);
        result.lut = plan.lut;
        result.output = apply_lut(img, result.lut);
    }
    result.runtime = std::chrono::steady_clock::now() - start;
    return result;
}

EnhanceResult he(const GrayImage& img) { return enhance(img, MethodId::he); }
EnhanceResult bbhe(const GrayImage& img) { return enhance(img, MethodId::bbhe); }
EnhanceResult dsihe(const GrayImage& img) { return enhance(img, MethodId::dsihe); }
EnhanceResult mmbebhe(const GrayImage& img) { return enhance(img, MethodId::mmbebhe); }
EnhanceResult bhepl(const GrayImage& img) { return enhance(img, MethodId::bhepl); }
EnhanceResult rlbhe(const GrayImage& img) { return enhance(img, MethodId::rlbhe); }
EnhanceResult itsbpl(const GrayImage& img) { return enhance(img, MethodId::itsbpl); }
EnhanceResult msbpl(const GrayImage& img) { return enhance(img, MethodId::msbpl); }
EnhanceResult mvsbpl(const GrayImage& img) { return enhance(img, MethodId::mvsbpl); }

}  // namespace bhe
