#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace intertwine {

enum class ErrorKind {
  InvalidParameters,
  IndexOutOfSpectrum,
  NormalizationFailure,
  EvaluationAtSingularity,
  UnsupportedModel,
  InvalidLevel,
  DivisionByZeroAlpha,
  InsufficientDerivativeOrder,
  TargetOutOfSpectrum,
  DegenerateImage,
  ChainBreak,
  NonConstantEpsilon,
  TruncationTooTight,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::IndexOutOfSpectrum: return "IndexOutOfSpectrum";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::EvaluationAtSingularity: return "EvaluationAtSingularity";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::InvalidLevel: return "InvalidLevel";
    case ErrorKind::DivisionByZeroAlpha: return "DivisionByZeroAlpha";
    case ErrorKind::InsufficientDerivativeOrder: return "InsufficientDerivativeOrder";
    case ErrorKind::TargetOutOfSpectrum: return "TargetOutOfSpectrum";
    case ErrorKind::DegenerateImage: return "DegenerateImage";
    case ErrorKind::ChainBreak: return "ChainBreak";
    case ErrorKind::NonConstantEpsilon: return "NonConstantEpsilon";
    case ErrorKind::TruncationTooTight: return "TruncationTooTight";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace intertwine
