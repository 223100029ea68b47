#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadrank {

enum class Errc {
  NonPrimeGenerator,
  DuplicateGenerator,
  BasisTooLarge,
  OutsideField,
  BasisMismatch,
  DivisionByZero,
  NotASubfield,
  DivisionByZeroPolynomial,
  PrimeInsideField,
  NotSquare,
  DimensionCapExceeded,
  NegativeEntry,
  NonIntegerEntry,
  DimensionMismatch,
  LengthMismatch,
  RaggedBlocks,
  DimensionCap,
  DomainTooSmall,
  WeightExceedsN,
  NotIncreasing,
  TwoNMinusOneComposite,
  DiagonalNotConstant,
  DiagonalNotPrimeForm,
  OffdiagEscapesSubfield,
  BadDiagonal,
  CapExceeded,
  DecompositionInvalid,
  DiagonalBlockNotUnit,
  BudgetExceeded,
  NonRationalEntries,
  InconsistentEvidence,
  ParseError,
  SpecError,
};

constexpr std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::NonPrimeGenerator: return "NonPrimeGenerator";
    case Errc::DuplicateGenerator: return "DuplicateGenerator";
    case Errc::BasisTooLarge: return "BasisTooLarge";
    case Errc::OutsideField: return "OutsideField";
    case Errc::BasisMismatch: return "BasisMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NotASubfield: return "NotASubfield";
    case Errc::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
    case Errc::PrimeInsideField: return "PrimeInsideField";
    case Errc::NotSquare: return "NotSquare";
    case Errc::DimensionCapExceeded: return "DimensionCapExceeded";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NonIntegerEntry: return "NonIntegerEntry";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::RaggedBlocks: return "RaggedBlocks";
    case Errc::DimensionCap: return "DimensionCap";
    case Errc::DomainTooSmall: return "DomainTooSmall";
    case Errc::WeightExceedsN: return "WeightExceedsN";
    case Errc::NotIncreasing: return "NotIncreasing";
    case Errc::TwoNMinusOneComposite: return "TwoNMinusOneComposite";
    case Errc::DiagonalNotConstant: return "DiagonalNotConstant";
    case Errc::DiagonalNotPrimeForm: return "DiagonalNotPrimeForm";
    case Errc::OffdiagEscapesSubfield: return "OffdiagEscapesSubfield";
    case Errc::BadDiagonal: return "BadDiagonal";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::DecompositionInvalid: return "DecompositionInvalid";
    case Errc::DiagonalBlockNotUnit: return "DiagonalBlockNotUnit";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NonRationalEntries: return "NonRationalEntries";
    case Errc::InconsistentEvidence: return "InconsistentEvidence";
    case Errc::ParseError: return "ParseError";
    case Errc::SpecError: return "SpecError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception type.
/// `code()` identifies the failing contract; `what()` is "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by sqrt_of_integer when the squarefree part needs primes the basis lacks.
class OutsideFieldError : public Error {
 public:
  OutsideFieldError(std::vector<unsigned long> missing, const std::string& detail)
      : Error(Errc::OutsideField, detail), missing_(std::move(missing)) {}

  const std::vector<unsigned long>& missing_primes() const noexcept { return missing_; }

 private:
  std::vector<unsigned long> missing_;
};

}  // namespace quadrank
