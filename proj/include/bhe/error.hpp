#pragma once

#include <stdexcept>
#include <string>

namespace bhe {

enum class ErrorCode {
    empty_input,
    degenerate_histogram,
    degenerate_sub_histogram,
    degenerate_clipped_histogram,
    invalid_partition,
    partition_mismatch,
    invalid_image,
    dimension_mismatch,
    undefined_uiqi,
    image_too_small,
    evaluator_failure,
    unsupported_format,
    corrupt_header,
    maxval_not_255,
    io_failure,
    unknown_method,
    invalid_argument,
};

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bhe
