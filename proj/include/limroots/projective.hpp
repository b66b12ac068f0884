#pragma once

#include <array>
#include <vector>

#include "limroots/coxeter.hpp"

namespace limroots {

/// Height below which (relative to |v|) a vector is taken to sit on the
/// hyperplane at infinity.
inline constexpr double kHeightRelTol = 1e-12;
/// Zero band for B(v, v), relative to |v|^2.
inline constexpr double kIsotropyRelTol = 1e-9;

/// A point of PV. Finite points are stored in the affine chart h(x) = 1 (their
/// coordinates over the simple roots sum to one). Points with h(x) = 0 are
/// stored as a unit direction whose first nonzero coordinate is positive.
struct ProjectivePoint {
  Vector coords;
  bool at_infinity = false;
  /// B(x, x) of the stored representative.
  double bnorm = 0.0;

  int rank() const { return static_cast<int>(coords.size()); }
  double height() const { return coords.sum(); }
};

/// Sum of the coordinates over the simple roots.
inline double height(const Vector& v) { return v.sum(); }

ProjectivePoint to_chart(const Vector& v, const Matrix& form, double height_tol = kHeightRelTol);

/// w . proj(x) = proj(w(x)).
ProjectivePoint act(const Matrix& w, const ProjectivePoint& p, const Matrix& form);

/// Euclidean distance between affine coordinates. Both points must be finite.
double chart_distance(const ProjectivePoint& a, const ProjectivePoint& b);

enum class Causal { SpaceLike, TimeLike, LightLike };

const char* to_string(Causal c) noexcept;

Causal causal_character(const Vector& v, const Matrix& form, double rel_tol = kIsotropyRelTol);

/// The projective light cone seen in the affine chart.
struct ConicSection {
  int rank = 0;
  /// Quadric in homogeneous chart coordinates (x_1, ..., x_{n-1}, 1): the
  /// chart point is lift * y and the cone equation is y^T quadric y = 0.
  Matrix quadric;
  Matrix lift;
  /// Discretization vertices, lifted to height 1. For rank 3 they are in
  /// angular order around an interior time-like point and form a closed
  /// polyline; for rank 4 they sample the surface.
  std::vector<Vector> vertices;
  /// The time-like chart point the discretization rays start from.
  Vector center;
};

/// Casts `resolution` rays (rank 3: evenly spaced angles; rank 4: a Fibonacci
/// sphere of directions) from a time-like chart point and keeps each exit
/// point on the light cone. Rays that never leave the cone in the chart are
/// skipped.
ConicSection light_conic(const GeometricSystem& sys, int resolution);

/// Fixed planar picture of the chart. Rank 3 maps the simplex onto an
/// equilateral triangle with alpha_1 at (0, 0), alpha_2 at (1, 0) and alpha_3
/// at (1/2, sqrt(3)/2). Rank 4 places the simple roots at the vertices of the
/// regular tetrahedron (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) and looks down
/// the (1,1,1) axis: x' = (p - q)/sqrt(2), y' = (p + q - 2r)/sqrt(6) for a 3D
/// point (p, q, r). alpha_1 lands at the centre.
std::array<double, 2> plot_coordinates(const Vector& chart_coords);

}  // namespace limroots
