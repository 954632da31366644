#include "bhe/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "bhe/error.hpp"
#include "bhe/histogram.hpp"
#include "bhe/image_io.hpp"

namespace bhe {

namespace {

constexpr int kKindCount = 6;

// Raw engine output only: std distributions are not reproducible across
// standard library implementations.
class Rng {
public:
    Rng(std::uint64_t seed, int index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), 0x5eedu};
        engine_.seed(seq);
    }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Irwin-Hall(4) rescaled to unit variance; close enough to Gaussian here.
    double noise(double sigma) {
        const double s = uniform() + uniform() + uniform() + uniform() - 2.0;
        return s * sigma * std::sqrt(3.0);
    }

private:
    std::mt19937_64 engine_;
};

struct Canvas {
    int size;
    std::vector<double> v;

    explicit Canvas(int s, double fill = 0.0) : size(s), v(static_cast<std::size_t>(s) * s, fill) {}
    double& at(int x, int y) { return v[static_cast<std::size_t>(y) * size + x]; }

    template <typename F>
    void each(F&& f) {
        for (int y = 0; y < size; ++y)
            for (int x = 0; x < size; ++x) f(x, y, at(x, y));
    }

    GrayImage quantize(Rng& rng, double sigma) {
        std::vector<std::uint8_t> px(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double value = v[i] + rng.noise(sigma);
            px[i] = static_cast<std::uint8_t>(std::clamp(std::lround(value), 0L, 255L));
        }
        return GrayImage(size, size, std::move(px));
    }
};

// Smoothstep falloff: 1 inside the ellipse, 0 beyond `soft` outside it.
double ellipse_weight(double x, double y, double cx, double cy, double rx, double ry, double soft) {
    const double d = std::sqrt(((x - cx) / rx) * ((x - cx) / rx) + ((y - cy) / ry) * ((y - cy) / ry));
    if (d <= 1.0) return 1.0;
    const double t = std::clamp((d - 1.0) / soft, 0.0, 1.0);
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

double mix(double a, double b, double w) { return a + (b - a) * w; }

// Dark background, skull ring, mid-gray tissue and a few bright lesions.
GrayImage brain(Rng& rng, int s) {
    Canvas c(s, rng.uniform(4.0, 14.0));
    const double cx = s * rng.uniform(0.46, 0.54), cy = s * rng.uniform(0.46, 0.54);
    const double rx = s * rng.uniform(0.36, 0.44), ry = s * rng.uniform(0.40, 0.46);
    const double skull = rng.uniform(170.0, 215.0);
    const double thickness = rng.uniform(0.05, 0.09);
    const double tissue = rng.uniform(80.0, 125.0);
    const double gradient = rng.uniform(-25.0, 25.0);
    const int lesions = 1 + static_cast<int>(rng.uniform() * 3.0);
    struct Blob { double x, y, r, level; };
    std::vector<Blob> blobs;
    for (int i = 0; i < lesions; ++i) {
        blobs.push_back({cx + rx * rng.uniform(-0.5, 0.5), cy + ry * rng.uniform(-0.5, 0.5),
                         s * rng.uniform(0.03, 0.09), rng.uniform(160.0, 235.0)});
    }
    c.each([&](int x, int y, double& v) {
        const double outer = ellipse_weight(x, y, cx, cy, rx, ry, 0.02);
        const double inner = ellipse_weight(x, y, cx, cy, rx * (1 - thickness), ry * (1 - thickness), 0.03);
        const double body = tissue + gradient * (x - cx) / rx;
        v = mix(v, skull, outer);
        v = mix(v, body, inner);
        for (const auto& b : blobs) v = mix(v, b.level, inner * ellipse_weight(x, y, b.x, b.y, b.r, b.r, 0.4));
    });
    return c.quantize(rng, rng.uniform(2.0, 5.0));
}

GrayImage unimodal(Rng& rng, int s) {
    const double base = rng.uniform(60.0, 190.0);
    const double amp = rng.uniform(8.0, 20.0);
    const double fx = rng.uniform(0.5, 2.5), fy = rng.uniform(0.5, 2.5);
    Canvas c(s);
    c.each([&](int x, int y, double& v) {
        v = base + amp * std::sin(2 * std::numbers::pi * fx * x / s) * std::cos(2 * std::numbers::pi * fy * y / s);
    });
    return c.quantize(rng, rng.uniform(4.0, 9.0));
}

GrayImage bimodal(Rng& rng, int s) {
    const double back = rng.uniform(20.0, 110.0);
    const double object = std::min(250.0, back + rng.uniform(60.0, 130.0));
    const double cx = s * rng.uniform(0.35, 0.65), cy = s * rng.uniform(0.35, 0.65);
    const double rx = s * rng.uniform(0.18, 0.35), ry = s * rng.uniform(0.18, 0.35);
    Canvas c(s, back);
    c.each([&](int x, int y, double& v) { v = mix(v, object, ellipse_weight(x, y, cx, cy, rx, ry, 0.08)); });
    return c.quantize(rng, rng.uniform(4.0, 8.0));
}

GrayImage trimodal(Rng& rng, int s) {
    const double l0 = rng.uniform(15.0, 60.0), l1 = rng.uniform(100.0, 150.0), l2 = rng.uniform(185.0, 235.0);
    const double cx = s * rng.uniform(0.4, 0.6), cy = s * rng.uniform(0.4, 0.6);
    const double r1 = s * rng.uniform(0.30, 0.42), r2 = r1 * rng.uniform(0.35, 0.6);
    const double ox = r1 * rng.uniform(-0.3, 0.3), oy = r1 * rng.uniform(-0.3, 0.3);
    Canvas c(s, l0);
    c.each([&](int x, int y, double& v) {
        v = mix(v, l1, ellipse_weight(x, y, cx, cy, r1, r1 * 0.85, 0.05));
        v = mix(v, l2, ellipse_weight(x, y, cx + ox, cy + oy, r2, r2, 0.1));
    });
    return c.quantize(rng, rng.uniform(3.0, 7.0));
}

// Washed-out image: all structure squeezed into a narrow band.
GrayImage low_dynamic_range(Rng& rng, int s) {
    const double centre = rng.uniform(80.0, 160.0);
    const double width = rng.uniform(16.0, 36.0);
    const double cx = s * rng.uniform(0.3, 0.7), cy = s * rng.uniform(0.3, 0.7);
    const double r = s * rng.uniform(0.2, 0.35);
    Canvas c(s);
    c.each([&](int x, int y, double& v) {
        const double shade = 0.5 * (static_cast<double>(y) / s) + 0.5 * ellipse_weight(x, y, cx, cy, r, r, 0.3);
        v = centre - width / 2 + width * shade;
    });
    return c.quantize(rng, rng.uniform(1.5, 3.5));
}

GrayImage ramp(Rng& rng, int s) {
    const double from = rng.uniform(0.0, 60.0), to = rng.uniform(195.0, 255.0);
    const double angle = rng.uniform(0.0, std::numbers::pi / 2);
    const double dx = std::cos(angle), dy = std::sin(angle);
    const double span = (dx + dy) * (s - 1);
    Canvas c(s);
    c.each([&](int x, int y, double& v) { v = mix(from, to, (x * dx + y * dy) / span); });
    return c.quantize(rng, rng.uniform(1.0, 4.0));
}

bool has_image_extension(const std::filesystem::path& p) {
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext == ".pgm" || ext == ".png";
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-') {
        throw Error(ErrorCode::invalid_argument, "invalid " + what + " '" + text + "'");
    }
    return v;
}

}  // namespace

bool CorpusFilter::accepts(int width, int height) const noexcept {
    const int side = std::min(width, height);
    if (min_side && side < *min_side) return false;
    if (max_side && std::max(width, height) > *max_side) return false;
    return true;
}

CorpusSpec CorpusSpec::parse(const std::string& text) {
    static const std::string prefix = "synthetic:";
    if (text.rfind(prefix, 0) != 0) return CorpusSpec{std::filesystem::path(text), {}};

    const std::string body = text.substr(prefix.size());
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = body.find(',', start);
        parts.push_back(body.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw Error(ErrorCode::invalid_argument, "synthetic corpus must be synthetic:<seed>,<count>[,<size>]");
    }
    SyntheticSource src;
    src.seed = parse_unsigned(parts[0], "seed");
    src.count = static_cast<int>(parse_unsigned(parts[1], "count"));
    if (parts.size() == 3) src.size = static_cast<int>(parse_unsigned(parts[2], "size"));
    if (src.size < 16) throw Error(ErrorCode::invalid_argument, "synthetic image size must be at least 16");
    return CorpusSpec{src, {}};
}

SyntheticKind synthetic_kind(int index) noexcept {
    return static_cast<SyntheticKind>(index % kKindCount);
}

const char* synthetic_kind_name(SyntheticKind kind) noexcept {
    switch (kind) {
        case SyntheticKind::brain: return "brain";
        case SyntheticKind::unimodal: return "unimodal";
        case SyntheticKind::bimodal: return "bimodal";
        case SyntheticKind::trimodal: return "trimodal";
        case SyntheticKind::low_dynamic_range: return "lowrange";
        case SyntheticKind::ramp: return "ramp";
    }
    return "unknown";
}

GrayImage synthetic_image(std::uint64_t seed, int index, int size) {
    Rng rng(seed, index);
    GrayImage img = [&] {
        switch (synthetic_kind(index)) {
            case SyntheticKind::brain: return brain(rng, size);
            case SyntheticKind::unimodal: return unimodal(rng, size);
            case SyntheticKind::bimodal: return bimodal(rng, size);
            case SyntheticKind::trimodal: return trimodal(rng, size);
            case SyntheticKind::low_dynamic_range: return low_dynamic_range(rng, size);
            case SyntheticKind::ramp: return ramp(rng, size);
        }
        return ramp(rng, size);
    }();
    // Guarantee three occupied levels so the two-threshold split always applies.
    if (compute_histogram(img).occupied_levels() < 3) {
        img.at(0, 0) = 0;
        img.at(1, 0) = 128;
        img.at(2, 0) = 255;
    }
    return img;
}

std::string synthetic_id(int index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "synthetic_%04d_%s", index, synthetic_kind_name(synthetic_kind(index)));
    return buf;
}

std::vector<CorpusEntry> generate_synthetic_corpus(std::uint64_t seed, int count, int size) {
    std::vector<CorpusEntry> out;
    out.reserve(std::max(count, 0));
    for (int i = 0; i < count; ++i) out.push_back({synthetic_id(i), synthetic_image(seed, i, size), {}});
    return out;
}

std::vector<std::filesystem::path> write_synthetic_corpus(std::uint64_t seed, int count,
                                                          const std::filesystem::path& dir, int size) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : generate_synthetic_corpus(seed, count, size)) {
        auto path = dir / (entry.id + ".pgm");
        write_image(*entry.image, path);
        paths.push_back(std::move(path));
    }
    return paths;
}

std::vector<CorpusEntry> load_corpus(const CorpusSpec& spec) {
    std::vector<CorpusEntry> entries;
    if (const auto* synth = std::get_if<SyntheticSource>(&spec.source)) {
        entries = generate_synthetic_corpus(synth->seed, synth->count, synth->size);
    } else {
        const auto& dir = std::get<std::filesystem::path>(spec.source);
        std::error_code ec;
        if (!std::filesystem::is_directory(dir, ec)) {
            throw Error(ErrorCode::io_failure, "corpus directory not found: " + dir.string());
        }
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            if (e.is_regular_file() && has_image_extension(e.path())) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end(),
                  [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
        for (const auto& f : files) {
            CorpusEntry entry{f.filename().string(), std::nullopt, {}};
            try {
                entry.image = read_image(f);
            } catch (const std::exception& e) {
                entry.error = e.what();
            }
            entries.push_back(std::move(entry));
        }
    }
    std::erase_if(entries, [&](const CorpusEntry& e) {
        return e.image && !spec.filter.accepts(e.image->width(), e.image->height());
    });
    return entries;
}

}  // namespace bhe
