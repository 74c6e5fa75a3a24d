#pragma once

#include <stdexcept>
#include <string>

namespace frobmu {

enum class Errc {
  NonPrimeP,
  ReduciblePoly,
  OwnerMismatch,
  DivisionByZero,
  EvenCharacteristic,
  BudgetExceeded,
  SingularCurve,
  GenusZero,
  NonIntegerCoefficient,
  SymmetryViolation,
  PrecisionExhausted,
  ClusteredRoots,
  ZeroInterval,
  InsufficientPrecision,
  RationalDetected,
  InvalidParams,
  WeilViolation,
  DegenerateR,
  CacheCorrupt,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeP: return "NonPrimeP";
    case Errc::ReduciblePoly: return "ReduciblePoly";
    case Errc::OwnerMismatch: return "OwnerMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::GenusZero: return "GenusZero";
    case Errc::NonIntegerCoefficient: return "NonIntegerCoefficient";
    case Errc::SymmetryViolation: return "SymmetryViolation";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ClusteredRoots: return "ClusteredRoots";
    case Errc::ZeroInterval: return "ZeroInterval";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::RationalDetected: return "RationalDetected";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::WeilViolation: return "WeilViolation";
    case Errc::DegenerateR: return "DegenerateR";
    case Errc::CacheCorrupt: return "CacheCorrupt";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace frobmu
