#pragma once

#include <stdexcept>
#include <string>

namespace qclif {

enum class ErrorCode {
    NotCongruent,
    DimensionMismatch,
    TooLarge,
    NotSymplectic,
    NotLinearModD,
    InvariantViolation,
    NotAPauli,
    NotClifford,
    UnsupportedGate,
    SyntaxError,
    UnboundVariable,
    LinearityViolation,
    TypeMismatch,
    SymplecticConditionFailed,
    RankMismatch,
    FuelExhausted,
    FormatError,
    IllFormedFrame,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotCongruent: return "NotCongruent";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotSymplectic: return "NotSymplectic";
        case ErrorCode::NotLinearModD: return "NotLinearModD";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::NotAPauli: return "NotAPauli";
        case ErrorCode::NotClifford: return "NotClifford";
        case ErrorCode::UnsupportedGate: return "UnsupportedGate";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::LinearityViolation: return "LinearityViolation";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::SymplecticConditionFailed: return "SymplecticConditionFailed";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::FuelExhausted: return "FuelExhausted";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::IllFormedFrame: return "IllFormedFrame";
    }
    return "Unknown";
}

/// Domain error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace qclif
