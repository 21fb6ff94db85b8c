#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lym {

enum class ErrorKind {
    PrecisionExhausted,
    CompositionMismatch,
    ZeroPart,
    ContextMismatch,
    RankOutOfRange,
    IndexOutOfRange,
    ModeMismatch,
    TooLarge,
    ParamMismatch,
    ShapeMismatch,
    Infeasible,
    InvalidArgument,
    MalformedInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::ZeroPart: return "ZeroPart";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ParamMismatch: return "ParamMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace lym
