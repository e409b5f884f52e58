#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ceresa {

enum class ErrorCode {
  NonResidue,
  BadModulus,
  DivisionByZero,
  BadDiscriminant,
  BadPrime,
  BadClass,
  UnsupportedHeckePrime,
  NoCatalogEntry,
  ClassNotCovered,
  SurdNotSupersingular,
  PoleHit,
  NoIrrationalWitness,
  NoneExists,
  SeedNotFound,
  CountMismatch,
  DegenerateLambda,
  NonzeroDelta,
  SingularSystem,
  SchemaError,
  ConjugacyError,
  UnsupportedSupport,
  NotDegreeZero,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonResidue: return "NonResidue";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BadDiscriminant: return "BadDiscriminant";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::BadClass: return "BadClass";
    case ErrorCode::UnsupportedHeckePrime: return "UnsupportedHeckePrime";
    case ErrorCode::NoCatalogEntry: return "NoCatalogEntry";
    case ErrorCode::ClassNotCovered: return "ClassNotCovered";
    case ErrorCode::SurdNotSupersingular: return "SurdNotSupersingular";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NoIrrationalWitness: return "NoIrrationalWitness";
    case ErrorCode::NoneExists: return "NoneExists";
    case ErrorCode::SeedNotFound: return "SeedNotFound";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::DegenerateLambda: return "DegenerateLambda";
    case ErrorCode::NonzeroDelta: return "NonzeroDelta";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ConjugacyError: return "ConjugacyError";
    case ErrorCode::UnsupportedSupport: return "UnsupportedSupport";
    case ErrorCode::NotDegreeZero: return "NotDegreeZero";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ceresa
