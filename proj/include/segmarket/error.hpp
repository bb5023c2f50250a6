#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace segmarket {

enum class ErrorCode {
    // market / grid validation
    EmptyGrid,
    NonIncreasingGrid,
    NonPositiveType,
    ZeroOrNegativeMass,
    MassesNotSummingToOne,
    // segmentation structure
    DimensionMismatch,
    NegativeMass,
    RowSumMismatch,
    PriceNotOnGrid,
    EmptySegment,
    NotEfficient,
    NotObedient,
    DifferentMarkets,
    // welfare
    NegativeWeight,
    InvalidTransform,
    InvalidTable,
    NotStrictlyRedistributive,
    IncomeBelowType,
    InvalidDistribution,
    // transfers
    NotATransfer,
    SupportOutsideOmega,
    PatternViolatesOmega,
    BadOrdering,
    NegativeAmount,
    InsufficientMass,
    NotTopType,
    InvalidDirection,
    // lp
    SolverFailure,
    // input
    ParseError,
    SchemaViolation,
    FileNotFound,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NonIncreasingGrid: return "NonIncreasingGrid";
    case ErrorCode::NonPositiveType: return "NonPositiveType";
    case ErrorCode::ZeroOrNegativeMass: return "ZeroOrNegativeMass";
    case ErrorCode::MassesNotSummingToOne: return "MassesNotSummingToOne";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::RowSumMismatch: return "RowSumMismatch";
    case ErrorCode::PriceNotOnGrid: return "PriceNotOnGrid";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::NotEfficient: return "NotEfficient";
    case ErrorCode::NotObedient: return "NotObedient";
    case ErrorCode::DifferentMarkets: return "DifferentMarkets";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InvalidTransform: return "InvalidTransform";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::NotStrictlyRedistributive: return "NotStrictlyRedistributive";
    case ErrorCode::IncomeBelowType: return "IncomeBelowType";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::NotATransfer: return "NotATransfer";
    case ErrorCode::SupportOutsideOmega: return "SupportOutsideOmega";
    case ErrorCode::PatternViolatesOmega: return "PatternViolatesOmega";
    case ErrorCode::BadOrdering: return "BadOrdering";
    case ErrorCode::NegativeAmount: return "NegativeAmount";
    case ErrorCode::InsufficientMass: return "InsufficientMass";
    case ErrorCode::NotTopType: return "NotTopType";
    case ErrorCode::InvalidDirection: return "InvalidDirection";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::FileNotFound: return "FileNotFound";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace segmarket
