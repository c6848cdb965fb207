#include "exkit/error.hpp"

namespace exkit {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyPath: return "EmptyPath";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::StartNotAtReference: return "StartNotAtReference";
    case ErrorCode::IncompleteInterior: return "IncompleteInterior";
    case ErrorCode::MismatchedDelta: return "MismatchedDelta";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::SegmentTimeout: return "SegmentTimeout";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::InvalidCDF: return "InvalidCDF";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InsufficientWindow: return "InsufficientWindow";
    case ErrorCode::NonMeanReverting: return "NonMeanReverting";
    case ErrorCode::NoCompleteExcursions: return "NoCompleteExcursions";
    case ErrorCode::EmptyMeasure: return "EmptyMeasure";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

} // namespace exkit
