#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bhe/clip_equalize.hpp"
#include "bhe/segmentation.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace bhe;
using oracle::histogram_of;

TEST_CASE("mean_threshold floors and clamps") {
    CHECK(mean_threshold(histogram_of({{0, 2}, {255, 2}})).thresholds == std::vector<int>{127});
    CHECK(mean_threshold(histogram_of({{100, 10}})).thresholds == std::vector<int>{100});
    const auto r = mean_threshold(histogram_of({{250, 1}, {255, 9}}));
    CHECK(r.thresholds == std::vector<int>{254});
    CHECK(r.objective == 254.5);
    CHECK_BHE_ERROR(mean_threshold(Histogram{}), ErrorCode::empty_input);
}

TEST_CASE("mean_threshold of a symmetric histogram is 127") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> lev(0, 127), cnt(1, 50);
    for (int i = 0; i < 50; ++i) {
        Histogram h;
        for (int j = 0; j < 10; ++j) {
            const int k = lev(rng);
            const auto c = static_cast<std::uint64_t>(cnt(rng));
            h.counts[k] += c;
            h.counts[255 - k] += c;
        }
        CHECK(mean_threshold(h).thresholds[0] == 127);
    }
}

TEST_CASE("otsu_threshold") {
    // Frozen from an exhaustive scan: every t in [1, 5] ties, smallest wins.
    const auto r = otsu_threshold(histogram_of({{1, 50}, {6, 50}}));
    CHECK(r.thresholds == std::vector<int>{1});
    CHECK(r.objective == doctest::Approx(6.25));
    CHECK(otsu_threshold(histogram_of({{0, 100}, {255, 100}})).thresholds == std::vector<int>{0});
    CHECK_BHE_ERROR(otsu_threshold(histogram_of({{5, 7}})), ErrorCode::degenerate_histogram);
}

TEST_CASE("otsu_threshold matches the exhaustive scan") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const auto h = oracle::random_histogram(rng, 2);
        CHECK(otsu_threshold(h).thresholds[0] == oracle::otsu_scan(h));
    }
}

TEST_CASE("otsu_two_thresholds") {
    CHECK(otsu_two_thresholds(histogram_of({{0, 1}, {1, 1}, {2, 1}})).thresholds == std::vector<int>{0, 1});
    const auto tri = otsu_two_thresholds(histogram_of({{10, 100}, {120, 100}, {240, 100}}));
    CHECK(tri.thresholds == std::vector<int>{10, 120});
    CHECK(tri.objective == doctest::Approx(8822.22222222222));
    CHECK_BHE_ERROR(otsu_two_thresholds(histogram_of({{9, 5}})), ErrorCode::degenerate_histogram);
    CHECK_BHE_ERROR(otsu_two_thresholds(histogram_of({{9, 5}, {40, 1}})), ErrorCode::degenerate_histogram);
}

TEST_CASE("otsu_two_thresholds matches the exhaustive pair scan") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 10; ++i) {
        const auto h = oracle::random_histogram(rng, 3);
        const auto [a, b] = oracle::otsu_pair_scan(h);
        CHECK(otsu_two_thresholds(h).thresholds == std::vector<int>{a, b});
    }
}

TEST_CASE("search_min_ambe_threshold") {
    const auto h = histogram_of({{3, 1}, {200, 1}});
    CHECK(search_min_ambe_threshold(h, [](int t) { return std::abs(t - 42.0); }).thresholds[0] == 42);

    const auto flat = search_min_ambe_threshold(h, [](int) { return 0.0; });
    CHECK(flat.thresholds[0] == 0);
    CHECK(flat.objective == 0.0);

    CHECK_BHE_ERROR(search_min_ambe_threshold(Histogram{}, [](int) { return 0.0; }), ErrorCode::empty_input);
}

TEST_CASE("search_min_ambe_threshold reports the failing threshold") {
    const auto h = histogram_of({{3, 1}, {200, 1}});
    try {
        search_min_ambe_threshold(h, [](int t) -> double {
            if (t == 17 || t == 90) throw std::runtime_error("boom");
            return t;
        });
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::evaluator_failure);
        CHECK(std::string(e.what()).find("threshold 17") != std::string::npos);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}

TEST_CASE("search_min_ambe_threshold over the clipped pipeline on the ramp") {
    const auto img = oracle::ramp_image();
    const auto h = compute_histogram(img);
    const auto table = oracle::ambe_table(img, true);
    const auto r = search_min_ambe_threshold(h, [&h](int t) {
        return lut_ambe(h, equalize_partition(h, Partition::from_thresholds({t}), Clipping::plateau));
    });
    // 39 / 0.4921875 frozen from an independent tabulation of all 255 candidates.
    CHECK(r.thresholds[0] == oracle::argmin(table));
    CHECK(r.thresholds[0] == 39);
    CHECK(r.objective == 0.4921875);
    for (double v : table) CHECK(r.objective <= v);
}
