#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bhe {

inline constexpr int kGrayLevels = 256;
inline constexpr int kMaxGray = kGrayLevels - 1;

/// 8-bit single-channel raster, row-major. Width and height are always
/// positive and the pixel buffer always holds exactly width * height values.
class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    std::span<const std::uint8_t> row(int y) const noexcept {
        return std::span<const std::uint8_t>(pixels_).subspan(
            static_cast<std::size_t>(y) * width_, width_);
    }

    std::uint8_t at(int x, int y) const noexcept {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) noexcept {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }

    bool same_shape(const GrayImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

}  // namespace bhe
