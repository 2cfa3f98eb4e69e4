#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heun {

enum class ErrorCode : std::uint8_t {
  kFuchsianViolation,
  kSingularA,
  kComplexExponents,
  kNonFiniteInput,
  kPoleAtC,
  kNoConvergence,
  kDomainError,
  kDivisionByZero,
  kRecurrenceBreakdown,
  kZeroDenominator,
  kNotTerminated,
  kWrongGamma0,
  kUnsupportedFrame,
  kInvalidTerminationClass,
  kStepFailure,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by the caller's input rather than by the method
// failing on otherwise valid input.
bool is_validation_error(ErrorCode code);

class HeunError : public std::runtime_error {
 public:
  HeunError(ErrorCode code, const std::string& what,
            std::optional<int> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }

  // Recurrence step or continued-fraction depth at which the failure
  // happened, when meaningful.
  std::optional<int> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<int> index_;
};

}  // namespace heun
