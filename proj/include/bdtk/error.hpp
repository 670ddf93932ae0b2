#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bdtk {

enum class ErrorCode {
  InvalidArgument,
  PeriodMismatch,
  NotInGroup,
  NotInvertible,
  ToleranceUnreachable,
  NotFredholm,
  Unstable,
  ReconstructionMismatch,
  Unsupported,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Mathematical failures (e.g. NotInvertible) are distinguished from malformed
/// input (InvalidArgument, Parse) so the CLI can map them to different exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool is_input_error() const noexcept {
    return code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::Parse;
  }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::PeriodMismatch: return "PERIOD_MISMATCH";
    case ErrorCode::NotInGroup: return "NOT_IN_GROUP";
    case ErrorCode::NotInvertible: return "NOT_INVERTIBLE";
    case ErrorCode::ToleranceUnreachable: return "TOLERANCE_UNREACHABLE";
    case ErrorCode::NotFredholm: return "NOT_FREDHOLM";
    case ErrorCode::Unstable: return "UNSTABLE";
    case ErrorCode::ReconstructionMismatch: return "RECONSTRUCTION_MISMATCH";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

}  // namespace bdtk
