#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsv {

enum class ErrorCode {
  InvalidGrading,
  OutOfRange,
  IllegalInclusion,
  NotRegularSingular,
  ConditionFailed,
  NoVanishing,
  DegenerateRoot,
  QuadratureFailure,
  NotProportional,
  NoLimit,
  ExponentTooSingular,
  DomainError,
  SearchExhausted,
  NotContracting,
  MaxIterExceeded,
  ResonanceError,
  MismatchDetected,
  HalfPlaneViolation,
  TailTooLarge,
  RootFindingFailure,
  NoAdmissibleRay,
  PreconditionViolated,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace rsv
