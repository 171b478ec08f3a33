#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conekit {

enum class ErrorKind {
  MismatchedLattice,
  NotUnimodular,
  WrongBPlus,
  HypothesisNotAsserted,
  KMismatch,
  UnknownModel,
  SchemaError,
  InvariantViolation,
  NotSquareZero,
  NoDualClass,
  NotGood,
  NonPositiveG,
  RhoOutOfRange,
  NonPositiveSquare,
  MatchingFailure,
  UnexpandableClass,
  HypothesisNotEstablished,
  ParseError,
  UsageError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MismatchedLattice: return "MismatchedLattice";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::WrongBPlus: return "WrongBPlus";
    case ErrorKind::HypothesisNotAsserted: return "HypothesisNotAsserted";
    case ErrorKind::KMismatch: return "KMismatch";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NotSquareZero: return "NotSquareZero";
    case ErrorKind::NoDualClass: return "NoDualClass";
    case ErrorKind::NotGood: return "NotGood";
    case ErrorKind::NonPositiveG: return "NonPositiveG";
    case ErrorKind::RhoOutOfRange: return "RhoOutOfRange";
    case ErrorKind::NonPositiveSquare: return "NonPositiveSquare";
    case ErrorKind::MatchingFailure: return "MatchingFailure";
    case ErrorKind::UnexpandableClass: return "UnexpandableClass";
    case ErrorKind::HypothesisNotEstablished: return "HypothesisNotEstablished";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `detail()` carries the named
/// invariant for InvariantViolation and the stage index for fold errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string detail = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message,
                              std::string detail = {}) {
  throw Error(kind, message, std::move(detail));
}

}  // namespace conekit
