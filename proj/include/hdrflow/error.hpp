#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdrflow {

enum class ErrorKind {
    CompositeP,
    UnsupportedRange,
    FieldMismatch,
    DivisionByZero,
    InvalidCurve,
    CurveMismatch,
    SmallCharacteristic,
    AmbiguousOrder,
    UnsupportedBlockStep,
    RangeTooLarge,
    InvalidGenus,
    UnsupportedLevel,
    ValidationFailed,
    KernelSearchExceeded,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept
{
    switch (k) {
    case ErrorKind::CompositeP: return "CompositeP";
    case ErrorKind::UnsupportedRange: return "UnsupportedRange";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidCurve: return "InvalidCurve";
    case ErrorKind::CurveMismatch: return "CurveMismatch";
    case ErrorKind::SmallCharacteristic: return "SmallCharacteristic";
    case ErrorKind::AmbiguousOrder: return "AmbiguousOrder";
    case ErrorKind::UnsupportedBlockStep: return "UnsupportedBlockStep";
    case ErrorKind::RangeTooLarge: return "RangeTooLarge";
    case ErrorKind::InvalidGenus: return "InvalidGenus";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::KernelSearchExceeded: return "KernelSearchExceeded";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error
{
    public:
        Error(ErrorKind kind, const std::string &what)
            : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_{kind} { }

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string &what) { throw Error(kind, what); }

} // namespace hdrflow
