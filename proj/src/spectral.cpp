#include "limroots/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <vector>

#include "limroots/error.hpp"

namespace limroots {

const char* to_string(TransformKind k) noexcept {
  switch (k) {
    case TransformKind::Elliptic: return "elliptic";
    case TransformKind::Parabolic: return "parabolic";
    case TransformKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

Eigen::VectorXcd eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::IllConditioned, "eigenvalue iteration did not converge");
  Eigen::VectorXcd ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), [](std::complex<double> a, std::complex<double> b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return ev;
}

namespace {

struct Svd {
  Matrix u;
  Vector sigma;
  Matrix v;
};

Svd full_svd(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double sv_threshold(const Vector& sigma, double rel_tol) {
  const double top = sigma.size() > 0 ? sigma[0] : 0.0;
  return rel_tol * std::max(1.0, top);
}

Matrix null_space(const Matrix& a, double rel_tol) {
  const Svd d = full_svd(a);
  const double thr = sv_threshold(d.sigma, rel_tol);
  int r = 0;
  while (r < d.sigma.size() && d.sigma[r] > thr) ++r;
  return d.v.rightCols(a.cols() - r);
}

// Orthonormal basis of the column span.
Matrix column_span(const Matrix& a, double rel_tol) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double thr = rel_tol * std::max(1.0, s[0]);
  int r = 0;
  while (r < s.size() && s[r] > thr) ++r;
  return svd.matrixU().leftCols(r);
}

// Eigenvector of a simple, well separated real eigenvalue: the SVD null vector
// of m - lambda I, polished by a few steps of power iteration.
Vector dominant_vector(const Matrix& m, double lambda) {
  const auto n = m.rows();
  const Svd d = full_svd(m - lambda * Matrix::Identity(n, n));
  Vector x = d.v.col(n - 1);
  for (int i = 0; i < 3; ++i) {
    Vector y = m * x;
    x = y / y.norm();
  }
  return x;
}

// Representative with positive height, or positive first large coordinate
// when the height vanishes.
Vector orient(Vector x) {
  const double h = x.sum();
  if (std::abs(h) > 1e-12 * x.norm()) {
    if (h < 0.0) x = -x;
    return x;
  }
  Eigen::Index i = 0;
  x.cwiseAbs().maxCoeff(&i);
  if (x[i] < 0.0) x = -x;
  return x;
}

double residual(const Matrix& m, const Vector& x, double lambda) {
  return (m * x - lambda * x).norm() / (x.norm() * std::max(1.0, std::abs(lambda)));
}

void check_residual(const Matrix& m, const Vector& x, double lambda, double tol, const char* what) {
  const double r = residual(m, x, lambda);
  if (!(r <= tol)) {
    std::ostringstream msg;
    msg << what << " eigenvector residual " << r << " exceeds " << tol;
    throw Error(ErrorKind::IllConditioned, msg.str());
  }
}

// Orthonormal bases of ker(a), ker(a^2), ..., ker(a^depth), built from a alone:
// v lies in ker(a^(j+1)) exactly when a v lies in ker(a^j). Forming a^j
// directly would leave rounding noise of size eps |a|^j in its image.
std::vector<Matrix> kernel_chain(const Matrix& a, int depth, double rel_tol) {
  const auto n = a.rows();
  std::vector<Matrix> out;
  out.push_back(null_space(a, rel_tol));
  for (int j = 1; j < depth; ++j) {
    const Matrix& q = out.back();
    const Matrix off = Matrix::Identity(n, n) - q * q.transpose();
    out.push_back(null_space(off * a, rel_tol));
  }
  return out;
}

double conditioning_band(const Matrix& m) {
  const double f = std::max(1.0, m.norm());
  return 10.0 * DBL_EPSILON * f * f;
}

bool is_real(std::complex<double> z) { return std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z)); }

std::optional<SpectralClass> try_hyperbolic(const GeometricSystem& sys, const Matrix& m, SpectralClass sc,
                                            const SpectralOptions& opts) {
  // Eigenvalues of a Lorentz matrix carry errors up to about eps |M|^2: the
  // eigenvector basis has condition number near |M|.
  // Repeated unit eigenvalues split further, so the others get extra room.
  const double tol = std::max(opts.hyperbolic_tol, 1e3 * conditioning_band(m));
  if (!(sc.spectral_radius > 1.0 + tol)) return std::nullopt;
  int outside = 0, inside = 0;
  double lambda = 0.0, mu = 0.0;
  for (auto z : sc.eigenvalues) {
    if (std::abs(z) > 1.0 + tol) {
      ++outside;
      if (is_real(z)) lambda = z.real();
    } else if (std::abs(z) < 1.0 / (1.0 + tol)) {
      ++inside;
      if (is_real(z)) mu = z.real();
    }
  }
  if (outside != 1 || inside != 1 || lambda == 0.0 || mu == 0.0) return std::nullopt;
  const auto n = m.rows();
  // Rayleigh refinement on the polished vector.
  Vector xp = dominant_vector(m, lambda);
  lambda = xp.dot(m * xp) / xp.squaredNorm();
  // x- is the dominant eigenvector of m^-1 = B^-1 m^T B; computing it there keeps
  // its relative accuracy when 1/lambda is tiny.
  const Matrix minv = sys.form_inverse() * m.transpose() * sys.form();
  Vector xm = dominant_vector(minv, lambda);
  // A tiny mu from the eigensolver is ill-conditioned; 1/mu is read off m^-1.
  const double inv_mu = xm.dot(minv * xm) / xm.squaredNorm();
  if (std::abs(inv_mu / lambda - 1.0) > 1e-6) return std::nullopt;
  xp = orient(xp);
  xm = orient(xm);
  check_residual(m, xp, lambda, opts.residual_tol, "x+");
  check_residual(minv, xm, lambda, opts.residual_tol, "x-");

  HyperbolicData hd;
  hd.lambda = lambda;
  hd.x_plus = xp / xp.norm();
  hd.x_minus = xm / xm.norm();
  hd.plus = to_chart(hd.x_plus, sys.form());
  hd.minus = to_chart(hd.x_minus, sys.form());

  Matrix constraints(2, n);
  constraints.row(0) = (sys.form() * hd.x_plus).transpose();
  constraints.row(1) = (sys.form() * hd.x_minus).transpose();
  Matrix u = null_space(constraints, opts.rank_tol);
  if (u.cols() != n - 2) throw Error(ErrorKind::ExtractionFailed, "x+ and x- are not independent");

  sc.kind = TransformKind::Hyperbolic;
  sc.dominant = std::move(hd);
  sc.unimodular_basis = std::move(u);
  return sc;
}

std::optional<SpectralClass> try_parabolic(const GeometricSystem& sys, const Matrix& m, SpectralClass sc,
                                           const SpectralOptions& opts) {
  // A size-3 Jordan block with off-diagonal entries of size |M| splits under
  // rounding into eigenvalues about cbrt(eps) |M| away from eps.
  const double tol = std::max(opts.hyperbolic_tol, 10.0 * std::cbrt(DBL_EPSILON) * std::max(1.0, m.norm()));
  const auto n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  for (int eps : {1, -1}) {
    int cluster = 0;
    for (auto z : sc.eigenvalues) {
      if (std::abs(z - std::complex<double>(eps, 0.0)) <= tol) ++cluster;
    }
    if (cluster < 3) continue;
    const Matrix a = m - eps * id;
    const auto chain = kernel_chain(a, 3, opts.rank_tol);
    const Matrix& k = chain[0];
    // No Jordan defect: ker(A^2) = ker(A).
    if (k.cols() == 0 || chain[1].cols() <= k.cols()) continue;
    const Matrix gram = k.transpose() * sys.form() * k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const Vector& gv = es.eigenvalues();
    const double gthr = opts.rank_tol * std::max(1.0, gv.cwiseAbs().maxCoeff()) * 1e3;
    int radical = 0;
    Eigen::Index at = 0;
    for (Eigen::Index i = 0; i < gv.size(); ++i) {
      if (std::abs(gv[i]) <= gthr) {
        ++radical;
        at = i;
      }
    }
    // The eigenvalue band is loose when |M| is large; a non-degenerate fixed
    // space means the element is not parabolic after all.
    if (radical == 0) continue;
    if (radical != 1) {
      std::ostringstream msg;
      msg << "radical of the form on ker(M - " << eps << "I) has dimension " << radical;
      throw Error(ErrorKind::ExtractionFailed, msg.str());
    }
    Vector x = orient(k * es.eigenvectors().col(at));
    x.normalize();
    check_residual(m, x, eps, opts.residual_tol, "light-like");

    // U = image(A^3) + ker(A): the other eigenspaces plus the eps-eigenvectors.
    // M^-1 - eps and A share kernels, so image(A^3) is the B-orthogonal
    // complement of ker(A^3).
    const Matrix img3 = null_space(chain[2].transpose() * sys.form(), opts.rank_tol);
    Matrix gen(n, img3.cols() + k.cols());
    gen << img3, k;
    Matrix u = column_span(gen, opts.rank_tol * 1e3);
    if (u.cols() != n - 2) {
      std::ostringstream msg;
      msg << "unimodular span has dimension " << u.cols() << ", expected " << n - 2;
      throw Error(ErrorKind::ExtractionFailed, msg.str());
    }
    const Matrix perp = null_space(u.transpose() * sys.form(), opts.rank_tol);
    const Matrix a2 = a * a;
    const double leak = (a2 * perp).norm();
    if (!(leak <= 1e-6 * std::max(1.0, a2.norm()))) {
      std::ostringstream msg;
      msg << "(M - eps I)^2 does not annihilate the complement of U (" << leak << ")";
      throw Error(ErrorKind::ExtractionFailed, msg.str());
    }

    ParabolicData pd;
    pd.epsilon = eps;
    pd.x = x;
    pd.direction = to_chart(x, sys.form());
    sc.kind = TransformKind::Parabolic;
    sc.parabolic = std::move(pd);
    sc.unimodular_basis = std::move(u);
    return sc;
  }
  return std::nullopt;
}

}  // namespace

SpectralClass classify(const GeometricSystem& sys, const Matrix& m, const SpectralOptions& opts) {
  if (!sys.lorentzian()) throw Error(ErrorKind::NotLorentzian, "form signature is " + sys.type_name());
  const auto n = sys.rank();
  if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::InvalidInput, "matrix size does not match the rank");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m.transpose() * sys.form() * m - sys.form()).cwiseAbs().maxCoeff() > 1e-8 * scale * scale) {
    throw Error(ErrorKind::InvalidInput, "matrix does not preserve the form");
  }

  SpectralClass sc;
  sc.eigenvalues = eigenvalues(m);
  sc.spectral_radius = sc.eigenvalues.cwiseAbs().maxCoeff();
  if (auto p = try_parabolic(sys, m, sc, opts)) return *p;
  if (auto h = try_hyperbolic(sys, m, sc, opts)) return *h;

  const Matrix id = Matrix::Identity(n, n);
  Matrix power = id;
  for (int k = 1; k <= opts.max_order; ++k) {
    power = power * m;
    if ((power - id).cwiseAbs().maxCoeff() <= std::max(1e-7, 1e3 * conditioning_band(m))) {
      sc.kind = TransformKind::Elliptic;
      sc.order = k;
      return sc;
    }
    if (!power.allFinite() || power.cwiseAbs().maxCoeff() > 1e12) break;
  }
  std::ostringstream msg;
  msg << "spectral radius " << sc.spectral_radius;
  if (sc.spectral_radius > 1.0 + opts.hyperbolic_tol) {
    msg << " above 1, but the spectrum is neither a simple real pair lambda^(+-1) nor a Jordan block";
    throw Error(ErrorKind::BorderlineSpectrum, msg.str());
  }
  msg << ": no Jordan defect and no finite order up to " << opts.max_order;
  throw Error(ErrorKind::UnresolvedType, msg.str());
}

SpectralClass classify(const GeometricSystem& sys, const GroupElement& e, const SpectralOptions& opts) {
  return classify(sys, e.matrix, opts);
}

std::pair<ProjectivePoint, ProjectivePoint> hyperbolic_directions(const SpectralClass& sc) {
  if (!sc.dominant) throw Error(ErrorKind::InvalidInput, std::string("element is ") + to_string(sc.kind));
  return {sc.dominant->plus, sc.dominant->minus};
}

ProjectivePoint parabolic_direction(const SpectralClass& sc) {
  if (!sc.parabolic) throw Error(ErrorKind::InvalidInput, std::string("element is ") + to_string(sc.kind));
  return sc.parabolic->direction;
}

const Matrix& unimodular_subspace(const SpectralClass& sc) {
  if (sc.kind == TransformKind::Elliptic) throw Error(ErrorKind::InvalidInput, "elliptic elements are not covered");
  return sc.unimodular_basis;
}

bool orthogonality_check(const Matrix& form, const Eigen::VectorXcd& z1, std::complex<double> lambda,
                         const Eigen::VectorXcd& z2, std::complex<double> mu, double tol) {
  if (std::abs(lambda * std::conj(mu) - 1.0) <= tol) return true;
  const Eigen::VectorXcd a = z1 / z1.norm();
  const Eigen::VectorXcd b = z2 / z2.norm();
  const std::complex<double> pairing = (a.transpose() * form.cast<std::complex<double>>() * b.conjugate())(0, 0);
  return std::abs(pairing) < tol;
}

}  // namespace limroots
