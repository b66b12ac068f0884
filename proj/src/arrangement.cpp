#include "limroots/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "limroots/error.hpp"
#include "limroots/spectral.hpp"

namespace limroots {

const char* to_string(IntersectionKind k) noexcept {
  switch (k) {
    case IntersectionKind::SpaceLike: return "space-like";
    case IntersectionKind::LightLike: return "light-like";
    case IntersectionKind::TimeLike: return "time-like";
  }
  return "?";
}

char to_char(Sign s) noexcept {
  switch (s) {
    case Sign::Negative: return '-';
    case Sign::Zero: return '0';
    case Sign::Positive: return '+';
  }
  return '?';
}

std::vector<Root> roots_by_depth(const GeometricSystem& sys, int max_depth) {
  if (max_depth < 1) throw Error(ErrorKind::InvalidInput, "max_depth must be at least 1");
  const int n = sys.rank();
  detail::QuantizedIndex index(static_cast<std::size_t>(n), 1e-7, 1e-9);
  std::vector<Root> roots;
  auto add = [&](Root r) {
    const std::span<const double> key(r.vector.data(), static_cast<std::size_t>(n));
    if (index.find(key)) return;
    index.insert(key);
    roots.push_back(std::move(r));
  };
  for (Generator s = 0; s < n; ++s) add(Root{Vector::Unit(n, s), 1, {}, s});

  std::size_t first = 0;
  for (int depth = 2; depth <= max_depth; ++depth) {
    const std::size_t last = roots.size();
    for (std::size_t id = first; id < last; ++id) {
      for (Generator s = 0; s < n; ++s) {
        const Vector& g = roots[id].vector;
        const double pairing = sys.form().row(s).dot(g);
        if (!(pairing < -1e-9 * std::max(1.0, g.cwiseAbs().maxCoeff()))) continue;
        Root r;
        r.vector = g;
        r.vector[s] -= 2.0 * pairing;
        r.depth = depth;
        r.word.reserve(roots[id].word.size() + 1);
        r.word.push_back(s);
        r.word.insert(r.word.end(), roots[id].word.begin(), roots[id].word.end());
        r.simple = roots[id].simple;
        add(std::move(r));
      }
    }
    first = last;
  }
  return roots;
}

std::vector<Weight> fundamental_weights(const GeometricSystem& sys) {
  if (!sys.nonsingular()) throw Error(ErrorKind::InvalidInput, "fundamental weights need a nonsingular form");
  std::vector<Weight> out;
  for (Generator s = 0; s < sys.rank(); ++s) out.push_back({sys.form_inverse().col(s), s});
  return out;
}

namespace {

Matrix orthonormal_complement(const Matrix& form, const Vector& a, const Vector& b) {
  Matrix c(2, a.size());
  c.row(0) = (form * a).transpose();
  c.row(1) = (form * b).transpose();
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(a.size() - 2);
}

IntersectionKind restricted_kind(const Matrix& form, const Matrix& basis) {
  if (basis.cols() == 0) return IntersectionKind::SpaceLike;
  Eigen::SelfAdjointEigenSolver<Matrix> es(basis.transpose() * form * basis, Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const double tol = 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() > tol) return IntersectionKind::SpaceLike;
  if (ev.minCoeff() >= -tol) return IntersectionKind::LightLike;
  return IntersectionKind::TimeLike;
}

}  // namespace

std::vector<Codim2Intersection> codim2_spacelike(const GeometricSystem& sys, const std::vector<Root>& roots,
                                                 bool include_all, double tol) {
  if (sys.rank() < 2) throw Error(ErrorKind::InvalidInput, "codimension-2 intersections need rank at least 2");
  std::vector<Codim2Intersection> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double p = sys.bilinear(roots[i].vector, roots[j].vector);
      std::optional<IntersectionKind> kind;
      if (p < -1.0 - tol) {
        kind = IntersectionKind::SpaceLike;
      } else if (std::abs(p + 1.0) <= tol) {
        kind = IntersectionKind::LightLike;
      } else if (!include_all) {
        continue;
      }
      Codim2Intersection ci;
      ci.first = i;
      ci.second = j;
      ci.root_first = roots[i].vector;
      ci.root_second = roots[j].vector;
      ci.basis = orthonormal_complement(sys.form(), roots[i].vector, roots[j].vector);
      ci.kind = kind ? *kind : restricted_kind(sys.form(), ci.basis);
      ci.pairing = p;
      if (sys.rank() == 3) ci.point = to_chart(ci.basis.col(0), sys.form());
      out.push_back(std::move(ci));
    }
  }
  return out;
}

double principal_angle(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidInput, "subspaces live in different dimensions");
  auto span = [](const Matrix& m) -> Matrix {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    const Vector& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s[r] > 1e-12 * std::max(1.0, s[0])) ++r;
    return svd.matrixU().leftCols(r);
  };
  const Matrix qa = span(a);
  const Matrix qb = span(b);
  if (qa.cols() != qb.cols()) return std::acos(0.0);
  if (qa.cols() == 0) return 0.0;
  // sin of the largest angle is the spectral norm of the residual of qa off span(qb).
  const Matrix residual = qa - qb * (qb.transpose() * qa);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return std::asin(std::min(1.0, svd.singularValues()[0]));
}

bool intersection_equals_unimodular(const GeometricSystem& sys, const Codim2Intersection& ci, double angle_tol) {
  if (ci.kind != IntersectionKind::SpaceLike) {
    throw Error(ErrorKind::InvalidInput, std::string("intersection is ") + to_string(ci.kind) + ", not space-like");
  }
  const Matrix m = reflection_matrix(sys.form(), ci.root_first) * reflection_matrix(sys.form(), ci.root_second);
  const SpectralClass sc = classify(sys, m);
  return principal_angle(ci.basis, unimodular_subspace(sc)) < angle_tol;
}

std::vector<Sign> sign_vector(const GeometricSystem& sys, const Vector& v, const std::vector<Root>& roots,
                              double tol) {
  const double band = tol * std::max(1.0, v.norm());
  const Vector bv = sys.form() * v;
  std::vector<Sign> out;
  out.reserve(roots.size());
  for (const Root& r : roots) {
    const double p = bv.dot(r.vector);
    out.push_back(p > band ? Sign::Positive : p < -band ? Sign::Negative : Sign::Zero);
  }
  return out;
}

std::vector<Sign> sign_vector(const GeometricSystem& sys, const ProjectivePoint& p, const std::vector<Root>& roots,
                              double tol) {
  return sign_vector(sys, p.coords, roots, tol);
}

Descent descend_to_fundamental(const GeometricSystem& sys, const Vector& v, int max_steps) {
  if (max_steps < 1) throw Error(ErrorKind::InvalidInput, "max_steps must be at least 1");
  Descent d;
  d.point = v;
  // Past this the band below loses meaning, and an overflowed norm would
  // certify anything.
  const double cap = 1e12 * std::max(1.0, v.norm());
  for (int step = 0; step <= max_steps; ++step) {
    if (!d.point.allFinite() || d.point.norm() > cap) break;
    const Vector bx = sys.form() * d.point;
    const double band = 1e-12 * std::max(1.0, d.point.norm());
    Generator s = -1;
    for (Generator t = 0; t < sys.rank(); ++t) {
      if (bx[t] < -band) {
        s = t;
        break;
      }
    }
    if (s < 0) {
      d.certified = true;
      return d;
    }
    if (step == max_steps) break;
    d.point[s] -= 2.0 * bx[s];
    d.word.push_back(s);
  }
  return d;
}

Descent descend_to_fundamental(const GeometricSystem& sys, const ProjectivePoint& p, int max_steps) {
  Descent d = descend_to_fundamental(sys, p.coords, max_steps);
  if (d.certified) return d;
  Descent neg = descend_to_fundamental(sys, Vector(-p.coords), max_steps);
  if (neg.certified) {
    neg.orientation = -1;
    return neg;
  }
  return d;
}

std::vector<std::array<std::size_t, 3>> collinear_triples(const std::vector<ProjectivePoint>& pts, double tol) {
  std::vector<std::array<std::size_t, 3>> out;
  if (pts.empty()) return out;
  if (pts.front().rank() != 3) throw Error(ErrorKind::Unsupported, "collinearity is a rank-3 diagnostic");
  std::vector<Eigen::Vector3d> unit;
  unit.reserve(pts.size());
  for (const auto& p : pts) unit.push_back(Eigen::Vector3d(p.coords).normalized());
  for (std::size_t i = 0; i < unit.size(); ++i) {
    for (std::size_t j = i + 1; j < unit.size(); ++j) {
      const Eigen::Vector3d c = unit[i].cross(unit[j]);
      for (std::size_t k = j + 1; k < unit.size(); ++k) {
        if (std::abs(c.dot(unit[k])) <= tol) out.push_back({i, j, k});
      }
    }
  }
  return out;
}

}  // namespace limroots
