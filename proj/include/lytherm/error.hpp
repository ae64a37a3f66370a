#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lytherm {

enum class ErrorCode {
  NegativeEntry,
  NotNormalized,
  LengthMismatch,
  NonpositiveBase,
  NotHermitian,
  NotPSD,
  NotUnitTrace,
  WeightMismatch,
  MissingLabels,
  GaugeDegenerate,
  NotFlat,
  NotMajorized,
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every lytherm operation. `index` carries a
/// position when one is meaningful (e.g. the first violated prefix).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace lytherm
