#pragma once

#include <stdexcept>
#include <string>

namespace loopalg {

enum class ErrorKind {
  InvalidInput,
  GhostVertex,
  OutOfRange,
  TooLarge,
  EmptySet,
  NotFlag,
  DegreeTooHigh,
  NonUnitConstant,
  NegativeExponent,
  BadConstantTerm,
  NonPrimitiveRay,
  DependentCone,
  NotSimplyConnected,
  BadRank,
  OracleMismatch,
  InternalAssertion,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::GhostVertex: return "GhostVertex";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotFlag: return "NotFlag";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NonUnitConstant: return "NonUnitConstant";
    case ErrorKind::NegativeExponent: return "NegativeExponent";
    case ErrorKind::BadConstantTerm: return "BadConstantTerm";
    case ErrorKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorKind::DependentCone: return "DependentCone";
    case ErrorKind::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Hard invariant check; stays active in release builds.
inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::InternalAssertion, what);
}

}  // namespace loopalg
