#include "limroots/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "limroots/error.hpp"

namespace limroots {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 40.0;

const char* colour(PointKind k) {
  switch (k) {
    case PointKind::ParabolicEig: return "#d62728";
    case PointKind::HyperbolicEig: return "#1f77b4";
    case PointKind::Orbit: return "#7f7f7f";
    case PointKind::Intersection: return "#2ca02c";
    case PointKind::Weight: return "#9467bd";
  }
  return "#000000";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Viewport {
  double xmin, ymin, scale;

  std::array<double, 2> map(const Vector& chart) const {
    const auto p = plot_coordinates(chart);
    return {kMargin + (p[0] - xmin) * scale, kSize - kMargin - (p[1] - ymin) * scale};
  }
};

}  // namespace

std::optional<std::pair<Vector, Vector>> chart_line(const Matrix& form, const Vector& root) {
  if (root.size() != 3) throw Error(ErrorKind::Unsupported, "chart lines are drawn for rank 3 only");
  Matrix a(2, 3);
  a.row(0) = (form * root).transpose();
  a.row(1) = Vector::Ones(3).transpose();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  if (s[1] <= 1e-12 * s[0]) return std::nullopt;
  Vector rhs(2);
  rhs << 0.0, 1.0;
  const Vector p = svd.solve(rhs);
  const Vector d = svd.matrixV().col(2);
  return std::make_pair(p, Vector(p + d));
}

std::string render_svg(const PlotScene& scene) {
  const int n = scene.rank;
  if (n < 2 || n > 4) throw Error(ErrorKind::Unsupported, "plots exist for rank 2 to 4 only");
  std::vector<std::array<double, 2>> corners;
  for (int i = 0; i < n; ++i) corners.push_back(plot_coordinates(Vector::Unit(n, i)));
  double xmin = corners[0][0], xmax = xmin, ymin = corners[0][1], ymax = ymin;
  for (const auto& c : corners) {
    xmin = std::min(xmin, c[0]);
    xmax = std::max(xmax, c[0]);
    ymin = std::min(ymin, c[1]);
    ymax = std::max(ymax, c[1]);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const Viewport vp{xmin - 0.5 * (span - (xmax - xmin)), ymin - 0.5 * (span - (ymax - ymin)),
                    (kSize - 2 * kMargin) / span};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  if (!scene.manifest_ref.empty()) os << "<metadata>manifest: " << escape(scene.manifest_ref) << "</metadata>\n";
  if (!scene.title.empty()) os << "<title>" << escape(scene.title) << "</title>\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto a = vp.map(Vector::Unit(n, i));
      const auto b = vp.map(Vector::Unit(n, j));
      os << "<line x1=\"" << num(a[0]) << "\" y1=\"" << num(a[1]) << "\" x2=\"" << num(b[0]) << "\" y2=\"" << num(b[1])
         << "\"/>\n";
    }
  }
  os << "</g>\n";

  if (!scene.lines.empty()) {
    os << "<g stroke=\"#bbbbbb\" stroke-width=\"0.6\">\n";
    for (const auto& [p, q] : scene.lines) {
      const auto a = vp.map(p);
      const auto b = vp.map(q);
      const double dx = b[0] - a[0], dy = b[1] - a[1];
      const double len = std::hypot(dx, dy);
      if (!(len > 0.0)) continue;
      const double ext = 4.0 * kSize / len;
      os << "<line x1=\"" << num(a[0] - ext * dx) << "\" y1=\"" << num(a[1] - ext * dy) << "\" x2=\""
         << num(a[0] + ext * dx) << "\" y2=\"" << num(a[1] + ext * dy) << "\"/>\n";
    }
    os << "</g>\n";
  }

  if (scene.conic && !scene.conic->vertices.empty()) {
    if (n == 3) {
      os << "<polygon fill=\"none\" stroke=\"#444444\" stroke-width=\"1\" points=\"";
      for (std::size_t i = 0; i < scene.conic->vertices.size(); ++i) {
        const auto a = vp.map(scene.conic->vertices[i]);
        os << (i ? " " : "") << num(a[0]) << ',' << num(a[1]);
      }
      os << "\"/>\n";
    } else {
      os << "<g fill=\"#cccccc\">\n";
      for (const auto& v : scene.conic->vertices) {
        const auto a = vp.map(v);
        os << "<circle cx=\"" << num(a[0]) << "\" cy=\"" << num(a[1]) << "\" r=\"0.6\"/>\n";
      }
      os << "</g>\n";
    }
  }

  for (const auto& [v, kind] : scene.points) {
    const auto a = vp.map(v);
    os << "<circle cx=\"" << num(a[0]) << "\" cy=\"" << num(a[1]) << "\" r=\"" << num(scene.point_radius)
       << "\" fill=\"" << colour(kind) << "\"/>\n";
  }
  for (const auto& v : scene.dots) {
    const auto a = vp.map(v);
    os << "<circle cx=\"" << num(a[0]) << "\" cy=\"" << num(a[1]) << "\" r=\"2.5\" fill=\"black\"/>\n";
  }
  for (const auto& v : scene.diamonds) {
    const auto a = vp.map(v);
    const double r = 6.0;
    os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.2\" points=\"" << num(a[0]) << ',' << num(a[1] - r)
       << ' ' << num(a[0] + r) << ',' << num(a[1]) << ' ' << num(a[0]) << ',' << num(a[1] + r) << ' '
       << num(a[0] - r) << ',' << num(a[1]) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace limroots
