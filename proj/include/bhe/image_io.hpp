#pragma once

#include <filesystem>
#include <string>

#include "bhe/image.hpp"

namespace bhe {

/// Reads binary (P5) or ASCII (P2) PGM with maxval 255, or an 8-bit
/// grayscale PNG. Anything else raises ErrorCode::unsupported_format,
/// corrupt_header or maxval_not_255.
GrayImage read_image(const std::filesystem::path& path);

GrayImage decode_pgm(const std::string& bytes);
std::string encode_pgm(const GrayImage& img);

/// Writes binary P5.
void write_image(const GrayImage& img, const std::filesystem::path& path);

}  // namespace bhe
