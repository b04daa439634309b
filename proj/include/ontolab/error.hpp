#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ontolab {

enum class ErrorCode {
  kInvalidParameter,
  kDimMismatch,
  kIndexOutOfRange,
  kNotHermitian,
  kNoConvergence,
  kGridTooSmall,
  kQuadratureUnderResolved,
  kPacketUnresolved,
  kNonpositiveMass,
  kConfigInvalid,
  kUpstreamError,
  kIoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kGridTooSmall: return "GridTooSmall";
    case ErrorCode::kQuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::kPacketUnresolved: return "PacketUnresolved";
    case ErrorCode::kNonpositiveMass: return "NonpositiveMass";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kUpstreamError: return "UpstreamError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

/// Single exception type for the library; the code tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace ontolab
