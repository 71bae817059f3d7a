#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurst {

enum class ErrorCode {
    LengthMismatch,
    NonFinite,
    DepthExceeded,
    IndexOutOfRange,
    InvalidP,
    LevelExceedsResolution,
    ResourceLimit,
    ZeroMoment,
    DegeneratePath,
    WindowTooDeep,
    DegenerateDesign,
    InvalidProfile,
    InvalidArgument,
    OutOfBounds,
    SeriesTooShort,
    InvalidNu,
    InvalidH,
    EmbeddingFailure,
    ParseError,
    EmptyInput,
    TooShort,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// True for failures caused by the numbers themselves (flat paths, singular
/// designs) rather than by malformed input.
[[nodiscard]] bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the CSV reader; carries the 1-based line number of the bad row.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace hurst
