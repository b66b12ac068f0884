#include "limroots/error.hpp"

namespace limroots {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::BorderlineSignature: return "borderline signature";
    case ErrorKind::NotLorentzian: return "not Lorentzian";
    case ErrorKind::BorderlineSpectrum: return "borderline spectrum";
    case ErrorKind::UnresolvedType: return "unresolved elliptic/parabolic";
    case ErrorKind::ExtractionFailed: return "parabolic extraction failed";
    case ErrorKind::IllConditioned: return "ill-conditioned eigenvector";
    case ErrorKind::FingerprintCollision: return "fingerprint collision";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::NotReduced: return "word not reduced";
    case ErrorKind::EllipticPeriod: return "elliptic period";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace limroots
