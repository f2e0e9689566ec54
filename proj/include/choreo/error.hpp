#pragma once

#include <stdexcept>
#include <string>

namespace choreo {

enum class ErrorCode {
  InvalidArgument,
  Io,
  UnsupportedFormat,
  EmptyAudio,
  Malformed,
  SchemaVersion,
  InvariantViolation,
  TooLarge,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported as choreo::Error. The code is what the
// C API maps onto its status values; the message is for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::UnsupportedFormat: return "unsupported format";
    case ErrorCode::EmptyAudio: return "empty audio";
    case ErrorCode::Malformed: return "malformed input";
    case ErrorCode::SchemaVersion: return "unknown schema version";
    case ErrorCode::InvariantViolation: return "invariant violation";
    case ErrorCode::TooLarge: return "problem too large";
  }
  return "unknown error";
}

}  // namespace choreo
