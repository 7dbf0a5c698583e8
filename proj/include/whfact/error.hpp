// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace whfact {

enum class ErrorCode {
    DomainError,
    NotResolved,
    NotEven,
    NotEvenApproximant,
    DegenerateSpectrum,
    DenominatorZeroOnInterval,
    RankDeficient,
    ZeroDenominator,
    PoleEvaluation,
    RootOnContour,
    NonUnitLimit,
    InvalidBound,
    NotConverged,
    AliasingDetected,
    WindingNonzero,
    PoleOfGamma,
    UnknownKernel,
    BoundViolated,
};

[[nodiscard]] constexpr std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotResolved: return "NotResolved";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::NotEvenApproximant: return "NotEvenApproximant";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DenominatorZeroOnInterval: return "DenominatorZeroOnInterval";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::PoleEvaluation: return "PoleEvaluation";
    case ErrorCode::RootOnContour: return "RootOnContour";
    case ErrorCode::NonUnitLimit: return "NonUnitLimit";
    case ErrorCode::InvalidBound: return "InvalidBound";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::AliasingDetected: return "AliasingDetected";
    case ErrorCode::WindingNonzero: return "WindingNonzero";
    case ErrorCode::PoleOfGamma: return "PoleOfGamma";
    case ErrorCode::UnknownKernel: return "UnknownKernel";
    case ErrorCode::BoundViolated: return "BoundViolated";
    }
    return "UnknownError";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace whfact
