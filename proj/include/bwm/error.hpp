#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bwm {

enum class ErrorCode {
  // structural PCS validation
  TooFewCriteria,
  SizeMismatch,
  IndexOutOfRange,
  BestEqualsWorst,
  DuplicateLabels,
  OutOfScale,
  DiagonalNotOne,
  BwMismatch,
  // documents
  MalformedJson,
  SchemaViolation,
  ReadFailure,
  // numerics
  NotNormalized,
  UnsupportedN,
  VariantUnavailable,
  // sensitivity
  StructureMismatch,
  BaseConsistent,
  SearchSpaceTooLarge,
  // aggregation
  MissingBlock,
  InvalidWeights,
  LabelMismatch,
  // oracle
  OracleFailure,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::TooFewCriteria: return "TooFewCriteria";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BestEqualsWorst: return "BestEqualsWorst";
    case ErrorCode::DuplicateLabels: return "DuplicateLabels";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::DiagonalNotOne: return "DiagonalNotOne";
    case ErrorCode::BwMismatch: return "BwMismatch";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ReadFailure: return "ReadFailure";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::VariantUnavailable: return "VariantUnavailable";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::BaseConsistent: return "BaseConsistent";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::MissingBlock: return "MissingBlock";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::OracleFailure: return "OracleFailure";
  }
  return "Unknown";
}

/// Every rejection raised by the library. `fields()` holds dotted paths of
/// the offending document fields (e.g. "best_to_others.c5") when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> fields = {})
      : std::runtime_error(std::move(message)), code_(code), fields_(std::move(fields)) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  ErrorCode code_;
  std::vector<std::string> fields_;
};

}  // namespace bwm
