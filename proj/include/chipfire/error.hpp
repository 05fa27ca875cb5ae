#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chipfire {

enum class ErrorKind {
  kLoopEdge,
  kBadName,
  kNegativeMultiplicity,
  kParseError,
  kInvalidArgument,
  kNotStronglyConnected,
  kKernelDegenerate,
  kIllegalFire,
  kNotPrimitive,
  kCapExceeded,
  kLimitExceeded,
  kVerificationFailed,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kLoopEdge: return "LoopEdge";
    case ErrorKind::kBadName: return "BadName";
    case ErrorKind::kNegativeMultiplicity: return "NegativeMultiplicity";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kNotStronglyConnected: return "NotStronglyConnected";
    case ErrorKind::kKernelDegenerate: return "KernelDegenerate";
    case ErrorKind::kIllegalFire: return "IllegalFire";
    case ErrorKind::kNotPrimitive: return "NotPrimitive";
    case ErrorKind::kCapExceeded: return "CapExceeded";
    case ErrorKind::kLimitExceeded: return "LimitExceeded";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chipfire
