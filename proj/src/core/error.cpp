#include "awegec/error.hpp"

namespace awegec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnbalancedParens: return "UnbalancedParens";
    case ErrorCode::EmptyNode: return "EmptyNode";
    case ErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::OverlappingEdits: return "OverlappingEdits";
    case ErrorCode::SpanOutOfRange: return "SpanOutOfRange";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::NoAnnotators: return "NoAnnotators";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::BadResponse: return "BadResponse";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::EmptyEssay: return "EmptyEssay";
    case ErrorCode::DegenerateRange: return "DegenerateRange";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::MissingPrompt: return "MissingPrompt";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::UnknownPrompt: return "UnknownPrompt";
    case ErrorCode::NotProcessed: return "NotProcessed";
    case ErrorCode::AlreadyReleased: return "AlreadyReleased";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NotYetAvailable: return "NotYetAvailable";
    case ErrorCode::ReviewDisabled: return "ReviewDisabled";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::int64_t position)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      position_(position) {}

}  // namespace awegec
