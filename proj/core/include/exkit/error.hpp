#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exkit {

enum class ErrorCode {
    EmptyPath,
    NonFiniteValue,
    NonMonotoneTime,
    LengthMismatch,
    StartNotAtReference,
    IncompleteInterior,
    MismatchedDelta,
    InvalidParam,
    InsufficientData,
    SegmentTimeout,
    QuadratureFailure,
    RootNotBracketed,
    DomainViolation,
    InvalidCDF,
    ParseError,
    InsufficientWindow,
    NonMeanReverting,
    NoCompleteExcursions,
    EmptyMeasure,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type thrown by the library; `code()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const char* message)
{
    if (!condition) fail(code, message);
}

} // namespace exkit
