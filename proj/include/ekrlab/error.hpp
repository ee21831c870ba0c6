#pragma once

#include <stdexcept>
#include <string>

namespace ekrlab {

// Every failure the library can report deliberately. The CLI maps these to
// exit codes: resource caps (BoundExceeded, Timeout) exit 3, everything else
// here is a usage/input problem and exits 1. Theorem violations are *results*,
// not errors; they travel in reports and never throw.
enum class Errc {
  NonPrime,
  ReduciblePolynomial,
  BoundExceeded,
  DivisionByZero,
  ZeroPolynomial,
  SingularMatrix,
  ZeroVector,
  ZeroDirection,
  NotIntersecting,
  NotNormalized,
  NotDiagonalizable,
  InvalidClique,
  InvalidCoclique,
  DomainError,
  NotTransitive,
  ParseError,
  Timeout,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::ReduciblePolynomial: return "ReduciblePolynomial";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::ZeroDirection: return "ZeroDirection";
    case Errc::NotIntersecting: return "NotIntersecting";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotDiagonalizable: return "NotDiagonalizable";
    case Errc::InvalidClique: return "InvalidClique";
    case Errc::InvalidCoclique: return "InvalidCoclique";
    case Errc::DomainError: return "DomainError";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::ParseError: return "ParseError";
    case Errc::Timeout: return "Timeout";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace ekrlab
