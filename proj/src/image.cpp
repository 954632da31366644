#include "bhe/image.hpp"

#include <string>

#include "bhe/error.hpp"

namespace bhe {

namespace {

void check_dimensions(int width, int height) {
    if (width <= 0 || height <= 0) {
        throw Error(ErrorCode::invalid_image, "image dimensions must be positive, got " +
                                                  std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dimensions(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * height) {
        throw Error(ErrorCode::invalid_image, "pixel buffer holds " + std::to_string(pixels_.size()) +
                                                  " values, expected " +
                                                  std::to_string(static_cast<std::size_t>(width) * height));
    }
}

}  // namespace bhe
