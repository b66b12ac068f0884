#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limroots/arrangement.hpp"
#include "limroots/limits.hpp"
#include "limroots/projective.hpp"

namespace limroots {

struct PlotScene {
  int rank = 3;
  std::optional<ConicSection> conic;
  /// Chart coordinates with the kind used for colouring.
  std::vector<std::pair<Vector, PointKind>> points;
  /// Rank 3: reflecting lines, as chart points spanning each line.
  std::vector<std::pair<Vector, Vector>> lines;
  /// Small filled discs, e.g. space-like codimension-2 intersections.
  std::vector<Vector> dots;
  /// Diamonds, e.g. weights.
  std::vector<Vector> diamonds;
  double point_radius = 1.2;
  std::string title;
  /// Written into the SVG metadata.
  std::string manifest_ref;
};

/// Deterministic SVG, 800 x 800 viewport. The simplex conv(Delta) fixes the
/// scale; lines are clipped to the viewport.
std::string render_svg(const PlotScene& scene);

/// Chart line H_gamma cap {h = 1} for rank 3, as two chart points.
std::optional<std::pair<Vector, Vector>> chart_line(const Matrix& form, const Vector& root);

}  // namespace limroots
