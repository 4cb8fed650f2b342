#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

/// Failure categories raised by the library. The CLI reports these by name.
enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  InvalidCone,
  InvalidSpace,
  NotInterior,
  NotOnBoundary,
  NumericalDegeneracy,
  CoincidentPoints,
  NotPositive,
  NotBiPositive,
  InvalidBody,
  OriginNotInterior,
  FacetsRequired,
  ChordDegenerate,
  OracleInconsistent,
  DependentDirection,
  RescaleDegenerate,
  NotSegmentPreserving,
  NotIsometry,
  StateVanishes,
  OverflowGuard,
  MalformedInput,
  NotIsometricIsomorphism,
  InconsistentSign,
  NotAffineInLog,
};

constexpr std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidCone: return "InvalidCone";
    case ErrorKind::InvalidSpace: return "InvalidSpace";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotBiPositive: return "NotBiPositive";
    case ErrorKind::InvalidBody: return "InvalidBody";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::FacetsRequired: return "FacetsRequired";
    case ErrorKind::ChordDegenerate: return "ChordDegenerate";
    case ErrorKind::OracleInconsistent: return "OracleInconsistent";
    case ErrorKind::DependentDirection: return "DependentDirection";
    case ErrorKind::RescaleDegenerate: return "RescaleDegenerate";
    case ErrorKind::NotSegmentPreserving: return "NotSegmentPreserving";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::StateVanishes: return "StateVanishes";
    case ErrorKind::OverflowGuard: return "OverflowGuard";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NotIsometricIsomorphism: return "NotIsometricIsomorphism";
    case ErrorKind::InconsistentSign: return "InconsistentSign";
    case ErrorKind::NotAffineInLog: return "NotAffineInLog";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace hilbert
