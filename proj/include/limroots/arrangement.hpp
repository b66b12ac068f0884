#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "limroots/coxeter.hpp"
#include "limroots/projective.hpp"

namespace limroots {

/// A positive root gamma = word(alpha_simple), with depth = |word| + 1.
struct Root {
  Vector vector;
  int depth = 1;
  Word word;
  Generator simple = 0;
};

struct Weight {
  Vector vector;
  Generator index = 0;
};

enum class IntersectionKind { SpaceLike, LightLike, TimeLike };

const char* to_string(IntersectionKind k) noexcept;

/// H_first cap H_second for a pair of positive roots.
struct Codim2Intersection {
  std::size_t first = 0;
  std::size_t second = 0;
  Vector root_first;
  Vector root_second;
  /// n x (n-2), Euclidean-orthonormal columns.
  Matrix basis;
  IntersectionKind kind = IntersectionKind::TimeLike;
  double pairing = 0.0;
  /// Rank 3 only: the intersection as a projective point.
  std::optional<ProjectivePoint> point;
};

/// Positive roots of depth <= max_depth by breadth-first search from the
/// simple roots: sigma_s(gamma) is deeper exactly when B(gamma, alpha_s) < 0.
std::vector<Root> roots_by_depth(const GeometricSystem& sys, int max_depth);

/// Columns of B^-1: B(alpha_s, omega_t) = delta_st. Throws InvalidInput for a
/// singular form.
std::vector<Weight> fundamental_weights(const GeometricSystem& sys);

/// Boundary band around B(gamma1, gamma2) = -1 separating L_hyp from L_par.
inline constexpr double kPairingTol = 1e-9;

/// Pairs with B < -1 - tol (space-like, the L_hyp pieces) and |B + 1| <= tol
/// (light-like, the L_par pieces). With include_all the remaining pairs are
/// returned too, classified by the restricted form.
std::vector<Codim2Intersection> codim2_spacelike(const GeometricSystem& sys, const std::vector<Root>& roots,
                                                 bool include_all = false, double tol = kPairingTol);

/// Largest principal angle between the column spans of two matrices.
double principal_angle(const Matrix& a, const Matrix& b);

/// Whether H_g1 cap H_g2 equals the unimodular subspace of sigma_g1 sigma_g2.
/// Throws InvalidInput unless the intersection is space-like.
bool intersection_equals_unimodular(const GeometricSystem& sys, const Codim2Intersection& ci,
                                    double angle_tol = 1e-7);

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

char to_char(Sign s) noexcept;

/// Sign of B(v, gamma) per root, with a zero band |B| <= tol * max(1, |v|).
std::vector<Sign> sign_vector(const GeometricSystem& sys, const Vector& v, const std::vector<Root>& roots,
                              double tol = 1e-9);
/// Same on the chart representative of a projective point.
std::vector<Sign> sign_vector(const GeometricSystem& sys, const ProjectivePoint& p, const std::vector<Root>& roots,
                              double tol = 1e-9);

struct Descent {
  /// Simple reflections in the order they were applied. Read as a group
  /// word, it is the element w with point = w^-1(start).
  Word word;
  Vector point;
  /// All pairings B(point, alpha_s) >= 0 reached: the start lies in the Tits cone.
  bool certified = false;
  /// -1 when the opposite representative of a projective point was used.
  int orientation = 1;
};

/// Greedy descent: while some B(x, alpha_s) < 0, reflect in the smallest such
/// s. Running out of steps, or the point growing past 1e12 times its start, is
/// inconclusive, not an error.
Descent descend_to_fundamental(const GeometricSystem& sys, const Vector& v, int max_steps);
/// Tries the chart representative, then its negative.
Descent descend_to_fundamental(const GeometricSystem& sys, const ProjectivePoint& p, int max_steps);

/// Rank-3 diagnostic: index triples of chart points lying on a common
/// projective line, |det[p_i p_j p_k]| <= tol. Reported, never asserted.
std::vector<std::array<std::size_t, 3>> collinear_triples(const std::vector<ProjectivePoint>& pts, double tol = 1e-9);

}  // namespace limroots
