#include "bhe/image_io.hpp"

#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bhe/error.hpp"

namespace bhe {

namespace {

constexpr std::size_t kPngSignatureSize = 8;

bool is_png(const std::string& bytes) {
    return bytes.size() >= kPngSignatureSize &&
           png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, kPngSignatureSize) == 0;
}

// Whitespace- and comment-aware tokenizer over a PGM header.
class PgmCursor {
public:
    explicit PgmCursor(const std::string& bytes) : bytes_(bytes) {}

    long next_integer(const char* what) {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            throw Error(ErrorCode::corrupt_header, std::string("corrupt header: expected ") + what);
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                throw Error(ErrorCode::corrupt_header, std::string("corrupt header: ") + what + " too large");
            }
            ++pos_;
        }
        return value;
    }

    // Binary rasters start after exactly one whitespace byte following maxval.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
            throw Error(ErrorCode::corrupt_header, "corrupt header: missing separator before raster");
        }
        return pos_ + 1;
    }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    std::size_t pos_ = 2;
};

struct PngReadState {
    const std::string* bytes;
    std::size_t offset;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t length) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (state->offset + length > state->bytes->size()) png_error(png, "truncated PNG stream");
    std::memcpy(out, state->bytes->data() + state->offset, length);
    state->offset += length;
}

void png_on_error(png_structp png, png_const_charp message) {
    auto* buffer = static_cast<std::string*>(png_get_error_ptr(png));
    if (buffer) *buffer = message;
    png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

// Plain C-style decode; no destructors may live across the setjmp frame.
bool decode_png_raw(const std::string& bytes, std::vector<std::uint8_t>& pixels, png_uint_32& width,
                    png_uint_32& height, int& bit_depth, int& color_type, std::string& message) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_on_error, png_on_warning);
    if (!png) {
        message = "cannot allocate PNG reader";
        return false;
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        message = "cannot allocate PNG info";
        return false;
    }
    PngReadState state{&bytes, 0};
    std::vector<png_bytep>* volatile rows = nullptr;
    if (setjmp(png_jmpbuf(png))) {
        delete rows;
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_set_read_fn(png, &state, png_read_from_memory);
    png_read_info(png, info);
    int interlace = 0;
    png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, &interlace, nullptr, nullptr);
    if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 8) {
        png_destroy_read_struct(&png, &info, nullptr);
        message = "unsupported format: PNG must be 8-bit grayscale";
        return false;
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    pixels.assign(static_cast<std::size_t>(width) * height, 0);
    rows = new std::vector<png_bytep>(height);
    std::vector<png_bytep>& row_ptrs = *rows;
    for (png_uint_32 y = 0; y < height; ++y) row_ptrs[y] = pixels.data() + static_cast<std::size_t>(y) * width;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    delete rows;
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

GrayImage decode_png(const std::string& bytes) {
    std::vector<std::uint8_t> pixels;
    png_uint_32 width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    std::string message;
    if (!decode_png_raw(bytes, pixels, width, height, bit_depth, color_type, message)) {
        const bool format = message.rfind("unsupported format", 0) == 0;
        throw Error(format ? ErrorCode::unsupported_format : ErrorCode::corrupt_header,
                    format ? message : "corrupt PNG: " + message);
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_failure, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::io_failure, "cannot read " + path.string());
    return buffer.str();
}

}  // namespace

GrayImage decode_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw Error(ErrorCode::unsupported_format, "unsupported format");
    }
    const bool binary = bytes[1] == '5';
    PgmCursor cursor(bytes);
    const long width = cursor.next_integer("width");
    const long height = cursor.next_integer("height");
    const long maxval = cursor.next_integer("maxval");
    if (width <= 0 || height <= 0) throw Error(ErrorCode::corrupt_header, "corrupt header: zero dimension");
    if (maxval != 255) throw Error(ErrorCode::maxval_not_255, "maxval not 255 (got " + std::to_string(maxval) + ")");

    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> pixels(n);
    if (binary) {
        const std::size_t offset = cursor.raster_offset();
        if (bytes.size() < offset + n) throw Error(ErrorCode::corrupt_header, "corrupt header: truncated raster");
        std::memcpy(pixels.data(), bytes.data() + offset, n);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const long v = cursor.next_integer("pixel value");
            if (v > 255) throw Error(ErrorCode::corrupt_header, "corrupt header: pixel value above maxval");
            pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::string encode_pgm(const GrayImage& img) {
    std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    const auto px = img.pixels();
    out.append(reinterpret_cast<const char*>(px.data()), px.size());
    return out;
}

GrayImage read_image(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (is_png(bytes)) return decode_png(bytes);
    return decode_pgm(bytes);
}

void write_image(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_failure, "cannot open " + path.string() + " for writing");
    const std::string bytes = encode_pgm(img);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::io_failure, "write failed for " + path.string());
}

}  // namespace bhe
