#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfc {

enum class ErrorKind {
    DivisionByZero,
    ZeroArgument,
    NotIntegral,
    SquareInput,
    NotFundamental,
    DegenerateBasis,
    RankDeficient,
    ExtensionMismatch,
    InvalidTransformation,
    NotAUnit,
    DiscriminantMismatch,
    DiscriminantNotTotallyNegative,
    WrongBase,
    IndefiniteForm,
    OrientationMismatch,
    NotPrimitive,
    DiscriminantNotInClass,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::SquareInput: return "SquareInput";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::DegenerateBasis: return "DegenerateBasis";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::ExtensionMismatch: return "ExtensionMismatch";
    case ErrorKind::InvalidTransformation: return "InvalidTransformation";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::DiscriminantNotTotallyNegative: return "DiscriminantNotTotallyNegative";
    case ErrorKind::WrongBase: return "WrongBase";
    case ErrorKind::IndefiniteForm: return "IndefiniteForm";
    case ErrorKind::OrientationMismatch: return "OrientationMismatch";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::DiscriminantNotInClass: return "DiscriminantNotInClass";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Domain error raised by every operation in the library. The kind is
/// machine readable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

} // namespace qfc
