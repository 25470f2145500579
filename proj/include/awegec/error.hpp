#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace awegec {

enum class ErrorCode {
  UnbalancedParens,
  EmptyNode,
  UnexpectedToken,
  MalformedLine,
  OverlappingEdits,
  SpanOutOfRange,
  UnknownCategory,
  NoAnnotators,
  Timeout,
  BadResponse,
  LengthMismatch,
  BackendUnavailable,
  EmptyEssay,
  DegenerateRange,
  InsufficientData,
  SchemaMismatch,
  MissingPrompt,
  EmptyText,
  UnknownPrompt,
  NotProcessed,
  AlreadyReleased,
  NotFound,
  NotYetAvailable,
  ReviewDisabled,
  InvalidTransition,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports. `position` carries a 1-based character
// position or line number when the code refers to input text, otherwise -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::int64_t position = -1);

  ErrorCode code() const noexcept { return code_; }
  std::int64_t position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::int64_t position_;
};

}  // namespace awegec
