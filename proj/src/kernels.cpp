#include "bhe/kernels.hpp"

#include <cmath>
#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bhe::kernels {

namespace {

using Index = std::ptrdiff_t;

// Separable pieces of the SSIM window: the 2-D Gaussian is the outer product
// of this 1-D kernel with itself.
std::array<double, SsimWindow::kSize> gaussian_1d() {
    std::array<double, SsimWindow::kSize> g{};
    double sum = 0.0;
    constexpr int half = SsimWindow::kSize / 2;
    for (int i = 0; i < SsimWindow::kSize; ++i) {
        const double d = i - half;
        g[i] = std::exp(-(d * d) / (2.0 * SsimWindow::kSigma * SsimWindow::kSigma));
        sum += g[i];
    }
    for (auto& v : g) v /= sum;
    return g;
}

const std::array<double, SsimWindow::kSize>& kernel_1d() {
    static const auto g = gaussian_1d();
    return g;
}

// Horizontally filtered moments of one image row pair: a, b, a^2, b^2, a*b.
struct MomentRows {
    std::vector<double> a, b, aa, bb, ab;

    explicit MomentRows(std::size_t n) : a(n), b(n), aa(n), bb(n), ab(n) {}
};

void filter_row(std::span<const std::uint8_t> ra, std::span<const std::uint8_t> rb, Index y, Index out_w,
                MomentRows& m) {
    const auto& g = kernel_1d();
    const std::size_t base = static_cast<std::size_t>(y) * out_w;
    for (Index x = 0; x < out_w; ++x) {
        double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
        for (int i = 0; i < SsimWindow::kSize; ++i) {
            const double va = ra[x + i];
            const double vb = rb[x + i];
            sa += g[i] * va;
            sb += g[i] * vb;
            saa += g[i] * (va * va);
            sbb += g[i] * (vb * vb);
            sab += g[i] * (va * vb);
        }
        m.a[base + x] = sa;
        m.b[base + x] = sb;
        m.aa[base + x] = saa;
        m.bb[base + x] = sbb;
        m.ab[base + x] = sab;
    }
}

double ssim_output_row(const MomentRows& m, Index y, Index out_w, const SsimConstants& k) {
    const auto& g = kernel_1d();
    double row_sum = 0.0;
    for (Index x = 0; x < out_w; ++x) {
        double mu_a = 0, mu_b = 0, eaa = 0, ebb = 0, eab = 0;
        for (int i = 0; i < SsimWindow::kSize; ++i) {
            const std::size_t idx = static_cast<std::size_t>(y + i) * out_w + x;
            mu_a += g[i] * m.a[idx];
            mu_b += g[i] * m.b[idx];
            eaa += g[i] * m.aa[idx];
            ebb += g[i] * m.bb[idx];
            eab += g[i] * m.ab[idx];
        }
        const double var_a = eaa - mu_a * mu_a;
        const double var_b = ebb - mu_b * mu_b;
        const double cov = eab - mu_a * mu_b;
        const double num = (2.0 * mu_a * mu_b + k.c1) * (2.0 * cov + k.c2);
        const double den = (mu_a * mu_a + mu_b * mu_b + k.c1) * (var_a + var_b + k.c2);
        row_sum += num / den;
    }
    return row_sum;
}

double sum_in_order(const std::vector<double>& parts) {
    double total = 0.0;
    for (double v : parts) total += v;
    return total;
}

}  // namespace

const SsimWindow& SsimWindow::gaussian() {
    static const SsimWindow w = [] {
        SsimWindow win{};
        const auto& g = kernel_1d();
        for (int y = 0; y < kSize; ++y)
            for (int x = 0; x < kSize; ++x) win.weights[y * kSize + x] = g[y] * g[x];
        return win;
    }();
    return w;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace serial {

LevelCounts histogram(std::span<const std::uint8_t> pixels) {
    LevelCounts counts{};
    for (auto v : pixels) ++counts[v];
    return counts;
}

void apply_lut(std::span<const std::uint8_t> src, const LevelMap& lut, std::span<std::uint8_t> dst) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
}

std::uint64_t squared_error_sum(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
        sum += static_cast<std::uint64_t>(d * d);
    }
    return sum;
}

CandidateValues evaluate_candidates(int count, const CandidateFn& fn) {
    CandidateValues out{std::vector<double>(count, 0.0), std::vector<std::exception_ptr>(count)};
    for (int t = 0; t < count; ++t) {
        try {
            out.values[t] = fn(t);
        } catch (...) {
            out.failures[t] = std::current_exception();
        }
    }
    return out;
}

double ssim_mean(const GrayImage& a, const GrayImage& b, const SsimConstants& k) {
    const Index out_w = a.width() - SsimWindow::kSize + 1;
    const Index out_h = a.height() - SsimWindow::kSize + 1;
    MomentRows m(static_cast<std::size_t>(a.height()) * out_w);
    for (Index y = 0; y < a.height(); ++y) filter_row(a.row(y), b.row(y), y, out_w, m);
    std::vector<double> rows(out_h);
    for (Index y = 0; y < out_h; ++y) rows[y] = ssim_output_row(m, y, out_w, k);
    return sum_in_order(rows) / static_cast<double>(out_w * out_h);
}

}  // namespace serial

namespace parallel {

LevelCounts histogram(std::span<const std::uint8_t> pixels) {
    LevelCounts counts{};
    const Index n = static_cast<Index>(pixels.size());
#pragma omp parallel
    {
        LevelCounts local{};
#pragma omp for nowait
        for (Index i = 0; i < n; ++i) ++local[pixels[i]];
#pragma omp critical(bhe_histogram_merge)
        for (int k = 0; k < kGrayLevels; ++k) counts[k] += local[k];
    }
    return counts;
}

void apply_lut(std::span<const std::uint8_t> src, const LevelMap& lut, std::span<std::uint8_t> dst) {
    const Index n = static_cast<Index>(src.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) dst[i] = lut[src[i]];
}

std::uint64_t squared_error_sum(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    const Index n = static_cast<Index>(a.size());
    std::uint64_t sum = 0;
#pragma omp parallel for schedule(static) reduction(+ : sum)
    for (Index i = 0; i < n; ++i) {
        const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
        sum += static_cast<std::uint64_t>(d * d);
    }
    return sum;
}

CandidateValues evaluate_candidates(int count, const CandidateFn& fn) {
    CandidateValues out{std::vector<double>(count, 0.0), std::vector<std::exception_ptr>(count)};
#pragma omp parallel for schedule(dynamic, 8)
    for (int t = 0; t < count; ++t) {
        try {
            out.values[t] = fn(t);
        } catch (...) {
            out.failures[t] = std::current_exception();
        }
    }
    return out;
}

double ssim_mean(const GrayImage& a, const GrayImage& b, const SsimConstants& k) {
    const Index out_w = a.width() - SsimWindow::kSize + 1;
    const Index out_h = a.height() - SsimWindow::kSize + 1;
    const Index h = a.height();
    MomentRows m(static_cast<std::size_t>(h) * out_w);
#pragma omp parallel for schedule(static)
    for (Index y = 0; y < h; ++y) filter_row(a.row(y), b.row(y), y, out_w, m);
    std::vector<double> rows(out_h);
#pragma omp parallel for schedule(static)
    for (Index y = 0; y < out_h; ++y) rows[y] = ssim_output_row(m, y, out_w, k);
    return sum_in_order(rows) / static_cast<double>(out_w * out_h);
}

}  // namespace parallel

}  // namespace bhe::kernels
