#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bhe/image.hpp"

namespace bhe {

struct SyntheticSource {
    std::uint64_t seed = 1;
    int count = 0;
    int size = 256;
};

struct CorpusFilter {
    std::optional<int> min_side;
    std::optional<int> max_side;

    bool accepts(int width, int height) const noexcept;
};

/// Where corpus images come from. Directories enumerate *.pgm and *.png in
/// lexicographic filename order; synthetic corpora are seed-deterministic.
struct CorpusSpec {
    std::variant<std::filesystem::path, SyntheticSource> source;
    CorpusFilter filter;

    /// "synthetic:<seed>,<count>" or a directory path.
    static CorpusSpec parse(const std::string& text);
};

/// One corpus member. `error` is set instead of `image` when loading failed.
struct CorpusEntry {
    std::string id;
    std::optional<GrayImage> image;
    std::string error;
};

std::vector<CorpusEntry> load_corpus(const CorpusSpec& spec);

enum class SyntheticKind { brain, unimodal, bimodal, trimodal, low_dynamic_range, ramp };

SyntheticKind synthetic_kind(int index) noexcept;
const char* synthetic_kind_name(SyntheticKind kind) noexcept;

/// Image `index` of the corpus for `seed`; independent of every other index.
/// Always has at least three occupied gray levels.
GrayImage synthetic_image(std::uint64_t seed, int index, int size = 256);

/// "synthetic_0007_trimodal" style identifiers, sortable by index.
std::string synthetic_id(int index);

std::vector<CorpusEntry> generate_synthetic_corpus(std::uint64_t seed, int count, int size = 256);

/// Writes the corpus as <id>.pgm files into `dir` (created if missing) and
/// returns the written paths in order.
std::vector<std::filesystem::path> write_synthetic_corpus(std::uint64_t seed, int count,
                                                          const std::filesystem::path& dir,
                                                          int size = 256);

}  // namespace bhe
