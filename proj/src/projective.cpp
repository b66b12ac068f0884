#include "limroots/projective.hpp"

#include <cmath>
#include <numbers>

#include "limroots/error.hpp"

namespace limroots {

ProjectivePoint to_chart(const Vector& v, const Matrix& form, double height_tol) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorKind::InvalidInput, "cannot project a zero or non-finite vector");
  ProjectivePoint p;
  const double h = v.sum();
  if (std::abs(h) <= height_tol * norm) {
    p.at_infinity = true;
    p.coords = v / norm;
    for (Eigen::Index i = 0; i < p.coords.size(); ++i) {
      if (std::abs(p.coords[i]) > 1e-12) {
        if (p.coords[i] < 0.0) p.coords = -p.coords;
        break;
      }
    }
  } else {
    p.coords = v / h;
  }
  p.bnorm = p.coords.dot(form * p.coords);
  return p;
}

ProjectivePoint act(const Matrix& w, const ProjectivePoint& p, const Matrix& form) {
  return to_chart(w * p.coords, form);
}

double chart_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.at_infinity || b.at_infinity) throw Error(ErrorKind::InvalidInput, "chart distance to a point at infinity");
  return (a.coords - b.coords).norm();
}

const char* to_string(Causal c) noexcept {
  switch (c) {
    case Causal::SpaceLike: return "space-like";
    case Causal::TimeLike: return "time-like";
    case Causal::LightLike: return "light-like";
  }
  return "?";
}

Causal causal_character(const Vector& v, const Matrix& form, double rel_tol) {
  const double q = v.dot(form * v) / v.squaredNorm();
  if (std::abs(q) <= rel_tol) return Causal::LightLike;
  return q > 0.0 ? Causal::SpaceLike : Causal::TimeLike;
}

namespace {

// Orthonormal basis of the height-zero hyperplane {sum x_i = 0}.
Matrix height_zero_basis(int n) {
  Matrix a = Matrix::Zero(n, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    for (int i = 0; i <= j; ++i) a(i, j) = 1.0;
    a(j + 1, j) = -(j + 1.0);
    a.col(j).normalize();
  }
  return a;
}

Vector timelike_chart_point(const GeometricSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.form());
  const Vector e = es.eigenvectors().col(0);
  if (std::abs(e.sum()) > 1e-6 * e.norm()) return e / e.sum();
  // Fall back to the sum of the fundamental weights, time-like for these groups.
  const Vector rho = sys.form_inverse() * Vector::Ones(sys.rank());
  if (std::abs(rho.sum()) > 1e-9 * rho.norm() && rho.dot(sys.form() * rho) < 0.0) return rho / rho.sum();
  throw Error(ErrorKind::Unsupported, "no time-like point in the affine chart");
}

}  // namespace

ConicSection light_conic(const GeometricSystem& sys, int resolution) {
  const int n = sys.rank();
  if (!sys.lorentzian()) throw Error(ErrorKind::NotLorentzian, "light cone of a non-Lorentzian form");
  if (n != 3 && n != 4) throw Error(ErrorKind::Unsupported, "light conic is drawn for rank 3 and 4 only");
  if (resolution < 3) throw Error(ErrorKind::InvalidInput, "resolution must be at least 3");

  ConicSection cs;
  cs.rank = n;
  cs.lift = Matrix::Identity(n, n);
  for (int j = 0; j < n - 1; ++j) cs.lift(n - 1, j) = -1.0;
  cs.quadric = cs.lift.transpose() * sys.form() * cs.lift;
  cs.center = timelike_chart_point(sys);

  const Matrix& b = sys.form();
  const Matrix basis = height_zero_basis(n);
  const double qc = cs.center.dot(b * cs.center);
  auto exit_point = [&](const Vector& d) -> std::optional<Vector> {
    // B(c + t d, c + t d) = qc + 2 t B(c, d) + t^2 B(d, d), negative at t = 0.
    const double bcd = cs.center.dot(b * d);
    const double bdd = d.dot(b * d);
    const double disc = bcd * bcd - bdd * qc;
    if (disc < 0.0) return std::nullopt;
    // Smallest positive root; with qc < 0 this formula picks it for either sign of bdd.
    const double t = std::abs(bdd) < 1e-14 ? -qc / (2.0 * bcd) : (-bcd + std::sqrt(disc)) / bdd;
    if (!(t > 0.0) || !std::isfinite(t)) return std::nullopt;
    return Vector(cs.center + t * d);
  };

  if (n == 3) {
    for (int k = 0; k < resolution; ++k) {
      const double th = 2.0 * std::numbers::pi * k / resolution;
      const Vector d = std::cos(th) * basis.col(0) + std::sin(th) * basis.col(1);
      if (auto v = exit_point(d)) cs.vertices.push_back(*v);
    }
  } else {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < resolution; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / resolution;
      const double r = std::sqrt(1.0 - z * z);
      const double th = golden * k;
      const Vector d = r * std::cos(th) * basis.col(0) + r * std::sin(th) * basis.col(1) + z * basis.col(2);
      if (auto v = exit_point(d)) cs.vertices.push_back(*v);
    }
  }
  return cs;
}

std::array<double, 2> plot_coordinates(const Vector& c) {
  switch (c.size()) {
    case 2:
      return {c[1], 0.0};
    case 3:
      return {c[1] + 0.5 * c[2], std::sqrt(3.0) / 2.0 * c[2]};
    case 4: {
      const double p = c[0] + c[1] - c[2] - c[3];
      const double q = c[0] - c[1] + c[2] - c[3];
      const double r = c[0] - c[1] - c[2] + c[3];
      return {(p - q) / std::sqrt(2.0), (p + q - 2.0 * r) / std::sqrt(6.0)};
    }
    default:
      throw Error(ErrorKind::Unsupported, "plot coordinates exist for rank 2 to 4 only");
  }
}

}  // namespace limroots
