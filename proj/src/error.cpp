#include "lytherm/error.hpp"

namespace lytherm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonpositiveBase: return "NonpositiveBase";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotUnitTrace: return "NotUnitTrace";
    case ErrorCode::WeightMismatch: return "WeightMismatch";
    case ErrorCode::MissingLabels: return "MissingLabels";
    case ErrorCode::GaugeDegenerate: return "GaugeDegenerate";
    case ErrorCode::NotFlat: return "NotFlat";
    case ErrorCode::NotMajorized: return "NotMajorized";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

}  // namespace lytherm
