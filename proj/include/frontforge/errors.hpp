#pragma once

#include <stdexcept>
#include <string>

namespace frontforge {

enum class ErrorCode {
    BadParams,
    BadConfig,
    MissingArtifact,
    NonHyperbolic,
    DegenerateJump,
    ComplexSoundSpeed,
    CorrectorDiverged,
    OutOfDomain,
    PotentialDomain,
    NoCrossing,
    InsufficientPoints,
    MismatchedShock,
    Instability,
    Sonic,
    NonPositive,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::MissingArtifact: return "MissingArtifact";
        case ErrorCode::NonHyperbolic: return "NonHyperbolic";
        case ErrorCode::DegenerateJump: return "DegenerateJump";
        case ErrorCode::ComplexSoundSpeed: return "ComplexSoundSpeed";
        case ErrorCode::CorrectorDiverged: return "CorrectorDiverged";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::PotentialDomain: return "PotentialDomain";
        case ErrorCode::NoCrossing: return "NoCrossing";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::MismatchedShock: return "MismatchedShock";
        case ErrorCode::Instability: return "Instability";
        case ErrorCode::Sonic: return "Sonic";
        case ErrorCode::NonPositive: return "NonPositive";
    }
    return "Error";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

    /// True for errors caused by invalid inputs/configuration rather than
    /// by a numerical breakdown at runtime.
    bool is_validation() const {
        return code_ == ErrorCode::BadParams || code_ == ErrorCode::BadConfig ||
               code_ == ErrorCode::MissingArtifact;
    }

  private:
    ErrorCode code_;
};

}  // namespace frontforge
