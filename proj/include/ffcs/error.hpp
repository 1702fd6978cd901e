#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffcs {

enum class ErrorCode {
    NegativeOffDiagonal,
    RowSumViolation,
    NonpositiveBoundary,
    InvalidModel,
    InvalidGrid,
    OutOfBracket,
    GridTooSmall,
    DimensionMismatch,
    SingularPivot,
    NoConvergence,
    RegimeOutOfRange,
    InsufficientHistory,
    NonpositiveAsset,
    GridMismatch,
    NonpositiveError,
    NonpositiveMu,
    ConfigParse,
    UnknownTable,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeOffDiagonal: return "NegativeOffDiagonal";
        case ErrorCode::RowSumViolation: return "RowSumViolation";
        case ErrorCode::NonpositiveBoundary: return "NonpositiveBoundary";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::OutOfBracket: return "OutOfBracket";
        case ErrorCode::GridTooSmall: return "GridTooSmall";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingularPivot: return "SingularPivot";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::RegimeOutOfRange: return "RegimeOutOfRange";
        case ErrorCode::InsufficientHistory: return "InsufficientHistory";
        case ErrorCode::NonpositiveAsset: return "NonpositiveAsset";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::NonpositiveError: return "NonpositiveError";
        case ErrorCode::NonpositiveMu: return "NonpositiveMu";
        case ErrorCode::ConfigParse: return "ConfigParse";
        case ErrorCode::UnknownTable: return "UnknownTable";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    /// Message without the code prefix.
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

}  // namespace ffcs
