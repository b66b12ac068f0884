#pragma once

#include <stdexcept>
#include <string>

namespace limroots {

enum class ErrorKind {
  InvalidInput,
  BorderlineSignature,
  NotLorentzian,
  BorderlineSpectrum,
  UnresolvedType,
  ExtractionFailed,
  IllConditioned,
  FingerprintCollision,
  BudgetExceeded,
  NotReduced,
  EllipticPeriod,
  EmptyInput,
  Unsupported,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so that callers (the CLI
/// in particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace limroots
