#ifndef PERMBIN_ERROR_HPP
#define PERMBIN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace permbin {

enum class ErrorKind {
  NotPrime,
  NotIrreducible,
  CapExceeded,
  InvalidArgument,
  DivisionByZero,
  ZeroToNegativePower,
  ZeroElement,
  NotInSubgroup,
  DNotDividing,
  SNotDividingR,
  BothZero,
  ZeroCoefficient,
  DegenerateExponents,
  ZeroEta,
  ZeroScalar,
  DNotDividingL,
  DEqualsOne,
  ParameterMismatch,
  PreconditionNotPermutation,
  ShapeMismatch,
  NotEquivalent,
  NoDecomposition,
  NotInSubfield,
  PreconditionFailed,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroToNegativePower: return "ZeroToNegativePower";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::DNotDividing: return "DNotDividing";
    case ErrorKind::SNotDividingR: return "SNotDividingR";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::DegenerateExponents: return "DegenerateExponents";
    case ErrorKind::ZeroEta: return "ZeroEta";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::DNotDividingL: return "DNotDividingL";
    case ErrorKind::DEqualsOne: return "DEqualsOne";
    case ErrorKind::ParameterMismatch: return "ParameterMismatch";
    case ErrorKind::PreconditionNotPermutation: return "PreconditionNotPermutation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotEquivalent: return "NotEquivalent";
    case ErrorKind::NoDecomposition: return "NoDecomposition";
    case ErrorKind::NotInSubfield: return "NotInSubfield";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace permbin

#endif  // PERMBIN_ERROR_HPP
