#pragma once

#include <complex>
#include <optional>

#include "limroots/coxeter.hpp"
#include "limroots/projective.hpp"

namespace limroots {

enum class TransformKind { Elliptic, Parabolic, Hyperbolic };

const char* to_string(TransformKind k) noexcept;

struct SpectralOptions {
  /// |lambda| within this of 1 counts as unimodular.
  double unimodular_tol = 1e-9;
  /// Spectral radius threshold above 1 for a hyperbolic candidate.
  double hyperbolic_tol = 1e-9;
  /// Largest power tried when looking for a finite order.
  int max_order = 1000;
  /// Relative singular-value threshold for numerical kernels and ranks.
  double rank_tol = 1e-9;
  /// Residual bound ||Mv - lambda v|| / (|v| max(1, |lambda|)) for eigenvectors.
  double residual_tol = 1e-6;
};

struct HyperbolicData {
  double lambda = 0.0;
  Vector x_plus;
  Vector x_minus;
  ProjectivePoint plus;
  ProjectivePoint minus;
};

struct ParabolicData {
  int epsilon = 1;
  Vector x;
  ProjectivePoint direction;
};

struct SpectralClass {
  TransformKind kind = TransformKind::Elliptic;
  Eigen::VectorXcd eigenvalues;
  double spectral_radius = 1.0;
  std::optional<HyperbolicData> dominant;
  std::optional<ParabolicData> parabolic;
  /// n x (n-2), Euclidean-orthonormal columns. Empty for elliptic elements.
  Matrix unimodular_basis;
  /// Order found by powering, elliptic only.
  int order = 0;
};

/// Eigenvalues of a real square matrix, sorted by modulus then argument.
Eigen::VectorXcd eigenvalues(const Matrix& m);

/// Sorts the spectrum of a Lorentz transformation into elliptic, parabolic or
/// hyperbolic.
///
/// Parabolic is tested first, structurally: for eps = +1 or -1, at least three
/// eigenvalues lie within 10 cbrt(machine eps) max(1, |M|_F) of eps (a size-3
/// Jordan block with entries of size |M| splits that far under rounding),
/// ker (M - eps I)^2 is larger than ker (M - eps I), and the form restricted to
/// ker (M - eps I) has a one-dimensional radical. A non-degenerate restriction
/// sends the element on to the other tests. The defect is cross-checked by
/// (M - eps I)^2 annihilating U^perp.
/// Hyperbolic needs exactly one eigenvalue outside 1 + tol and one inside its
/// reciprocal, both real, with product 1, where tol is the larger of
/// hyperbolic_tol and 1e4 eps |M|_F^2 (eigenvalue errors of a Lorentz matrix
/// grow with the square of its norm, and repeated unit eigenvalues split
/// further). Elliptic is a power M^k = I for some k <= max_order, entrywise
/// within max(1e-7, 1e4 eps |M|_F^2).
///
/// Throws NotLorentzian, BorderlineSpectrum (spectral radius above 1 with no
/// type fitting), UnresolvedType, ExtractionFailed or IllConditioned.
SpectralClass classify(const GeometricSystem& sys, const Matrix& m, const SpectralOptions& opts = {});
SpectralClass classify(const GeometricSystem& sys, const GroupElement& e, const SpectralOptions& opts = {});

/// (x+, x-): eigendirections for lambda > 1 and 1/lambda.
std::pair<ProjectivePoint, ProjectivePoint> hyperbolic_directions(const SpectralClass& sc);

/// The light-like eps-eigendirection of a parabolic element.
ProjectivePoint parabolic_direction(const SpectralClass& sc);

/// Basis of the (n-2)-dimensional real span of unimodular eigenvectors.
const Matrix& unimodular_subspace(const SpectralClass& sc);

/// Test oracle for the orthogonality of eigenvectors with lambda conj(mu) != 1:
/// returns true when either lambda conj(mu) = 1 (within tol) or
/// |B(z1, z2)| < tol for the unit-normalized vectors. B is extended
/// sesquilinearly, B(z1, z2) = z1^T B conj(z2).
bool orthogonality_check(const Matrix& form, const Eigen::VectorXcd& z1, std::complex<double> lambda,
                         const Eigen::VectorXcd& z2, std::complex<double> mu, double tol = 1e-8);

}  // namespace limroots
