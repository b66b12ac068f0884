#include "limroots/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "limroots/arrangement.hpp"
#include "limroots/error.hpp"
#include "limroots/io.hpp"

namespace limroots {

void CheckReport::add(std::string what, double value, std::string relation, double threshold) {
  bool ok = false;
  if (relation == "<") {
    ok = value < threshold;
  } else if (relation == "<=") {
    ok = value <= threshold;
  } else if (relation == ">") {
    ok = value > threshold;
  } else if (relation == ">=") {
    ok = value >= threshold;
  } else if (relation == "==") {
    ok = value == threshold;
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown relation '" + relation + "'");
  }
  pass = pass && ok;
  measurements.push_back({std::move(what), value, threshold, std::move(relation), ok});
}

void CheckReport::require(std::string what, bool ok) { add(std::move(what), ok ? 1.0 : 0.0, "==", 1.0); }

nlohmann::json CheckReport::to_json() const {
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : measurements) {
    // JSON has no infinity; an infinite measurement prints as null.
    nlohmann::json value = std::isfinite(m.value) ? nlohmann::json(m.value) : nlohmann::json(nullptr);
    ms.push_back({{"name", m.name}, {"value", value}, {"relation", m.relation}, {"threshold", m.threshold},
                  {"pass", m.pass}});
  }
  return {{"suite", name}, {"pass", pass}, {"measurements", ms}, {"notes", notes}};
}

namespace {

SampleOptions sample_options(const VerifyBudgets& b, bool parabolic, bool hyperbolic) {
  SampleOptions o;
  o.dedup_eps = b.dedup_eps;
  o.threads = b.threads;
  o.parabolic = parabolic;
  o.hyperbolic = hyperbolic;
  return o;
}

std::string range_text(LengthRange r) {
  std::ostringstream os;
  os << r.lo << ".." << r.hi;
  return os.str();
}

// Angle between v and the span of the orthonormal columns q.
double angle_to_span(const Vector& v, const Matrix& q) {
  const Vector r = v - q * (q.transpose() * v);
  return std::asin(std::min(1.0, r.norm() / v.norm()));
}

// For unit roots a, b with B(a,b) < -1, the isotropic line of span(a, b) that
// m contracts, from the roots of 1 + 2 B(a,b) t + t^2 = 0 (product 1).
Vector contracted_isotropic(const Matrix& form, const Vector& a, const Vector& b, const Matrix& m) {
  const double c = a.dot(form * b);
  const double t = -c + std::sqrt((c - 1.0) * (c + 1.0));
  const Vector v1 = a + t * b;
  const Vector v2 = a + b / t;
  return (m * v1).norm() / v1.norm() < (m * v2).norm() / v2.norm() ? v1 : v2;
}

}  // namespace

CheckReport verify_isotropy(const GeometricSystem& sys, const VerifyBudgets& b) {
  CheckReport rep;
  rep.name = "isotropy";
  const ElementStore store = enumerate(sys, std::max(b.core.hi, b.conj.hi));
  SampleReport sr;
  const PointSet set = sample_limit_roots(sys, store, b.core, b.conj, sample_options(b, true, true), &sr);
  double worst_b = 0.0;
  double worst_hull = std::numeric_limits<double>::infinity();
  for (const auto& p : set.points()) {
    if (p.at_infinity) continue;
    worst_b = std::max(worst_b, std::abs(p.bnorm));
    worst_hull = std::min(worst_hull, p.coords.minCoeff());
  }
  rep.note("core " + range_text(b.core) + ", conj " + range_text(b.conj) + ": " + std::to_string(set.size()) +
           " points from " + std::to_string(sr.core_directions) + " core directions");
  rep.add("points", static_cast<double>(set.size()), ">", 0.0);
  rep.add("points at infinity", static_cast<double>(set.count_at_infinity()), "==", 0.0);
  rep.add("max |B(x,x)|", worst_b, "<", kIsotropyBound);
  rep.add("min chart coordinate", worst_hull, ">=", -kHullBound);
  return rep;
}

CheckReport verify_density(const GeometricSystem& sys, const VerifyBudgets& b) {
  CheckReport rep;
  rep.name = "density";
  if (b.density_budgets.size() != 3 || !(b.density_budgets[0] < b.density_budgets[1] &&
                                         b.density_budgets[1] < b.density_budgets[2])) {
    throw Error(ErrorKind::InvalidInput, "density needs three increasing budgets");
  }
  const int top = std::max(b.density_budgets[2], b.pair_budget);
  const ElementStore store = enumerate(sys, top);

  auto sample = [&](int budget, bool par, bool hyp) -> std::optional<PointSet> {
    try {
      return sample_limit_roots(sys, store, {1, budget}, {0, budget}, sample_options(b, par, hyp));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyInput) throw;
      return std::nullopt;
    }
  };
  auto distance = [](const std::optional<PointSet>& x, const std::optional<PointSet>& y) {
    if (!x || !y) return std::numeric_limits<double>::infinity();
    return hausdorff(*x, *y).distance;
  };
  const int b0 = b.density_budgets[0], b1 = b.density_budgets[1], b2 = b.density_budgets[2];
  const auto tag = [](int k) { return "budget " + std::to_string(k); };

  // Hyperbolic eigendirections only.
  const auto h0 = sample(b0, false, true), h1 = sample(b1, false, true), h2 = sample(b2, false, true);
  const double dh_far = distance(h0, h2), dh_near = distance(h1, h2);
  if (!h0) rep.note("hyperbolic set at " + tag(b0) + " is empty; its distance is infinite");
  rep.add("hyperbolic d(" + tag(b1) + ", " + tag(b2) + ") - d(" + tag(b0) + ", " + tag(b2) + ")",
          std::isinf(dh_far) ? -std::numeric_limits<double>::infinity() : dh_near - dh_far, "<=", 0.0);
  rep.add("hyperbolic d(" + tag(b1) + ", " + tag(b2) + ")", dh_near, "<", std::numeric_limits<double>::infinity());

  // All light-like eigendirections, which is never vacuous once parabolics exist.
  const auto a0 = sample(b0, true, true), a1 = sample(b1, true, true), a2 = sample(b2, true, true);
  const double da_far = distance(a0, a2), da_near = distance(a1, a2);
  rep.add("all-kinds d(" + tag(b0) + ", " + tag(b2) + ")", da_far, "<", std::numeric_limits<double>::infinity());
  rep.add("all-kinds d(" + tag(b1) + ", " + tag(b2) + ") - d(" + tag(b0) + ", " + tag(b2) + ")", da_near - da_far,
          "<=", 0.0);

  // Parabolic against hyperbolic eigendirections of short elements.
  auto unconjugated = [&](bool par, bool hyp) -> std::optional<PointSet> {
    try {
      return sample_limit_roots(sys, store, {1, b.pair_budget}, {0, 0}, sample_options(b, par, hyp));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyInput) throw;
      return std::nullopt;
    }
  };
  const auto par = unconjugated(true, false);
  const auto hyp = unconjugated(false, true);
  if (par && hyp) {
    rep.add("parabolic vs hyperbolic at " + tag(b.pair_budget), distance(par, hyp), "<", b.pair_threshold);
    rep.note("parabolic " + std::to_string(par->size()) + " points, hyperbolic " + std::to_string(hyp->size()) +
             " points (core 1.." + std::to_string(b.pair_budget) + ", no conjugation)");
  } else {
    rep.note("parabolic/hyperbolic comparison skipped: one side has no elements");
  }
  return rep;
}

CheckReport verify_sandwich(const GeometricSystem& sys, const VerifyBudgets& b) {
  CheckReport rep;
  rep.name = "sandwich";
  const auto roots = roots_by_depth(sys, b.depth);
  const auto cis = codim2_spacelike(sys, roots);
  std::size_t space = 0, light = 0, wrong_type = 0, mismatched = 0, refused = 0;
  double worst_angle = 0.0, worst_orbit = 0.0, worst_xminus = 0.0;
  std::string first_refusal;
  for (const auto& ci : cis) {
    const Matrix m = reflection_matrix(sys.form(), ci.root_first) * reflection_matrix(sys.form(), ci.root_second);
    SpectralClass sc;
    try {
      sc = classify(sys, m);
    } catch (const Error& e) {
      if (refused++ == 0) first_refusal = e.what();
      continue;
    }
    if (ci.kind == IntersectionKind::LightLike) {
      ++light;
      if (sc.kind != TransformKind::Parabolic) ++wrong_type;
      continue;
    }
    ++space;
    if (sc.kind != TransformKind::Hyperbolic) {
      ++wrong_type;
      continue;
    }
    const double angle = principal_angle(ci.basis, sc.unimodular_basis);
    worst_angle = std::max(worst_angle, angle);
    if (!intersection_equals_unimodular(sys, ci)) ++mismatched;

    // Orbit base: no x+ component, nonzero unimodular part. When x+ and x-
    // nearly coincide the eigensolver's x- carries an x+ component that the
    // orbit amplifies, so the base takes x- from the plane of the two roots.
    const auto& hd = *sc.dominant;
    Vector xm = contracted_isotropic(sys.form(), ci.root_first, ci.root_second, m);
    xm.normalize();
    worst_xminus = std::max(worst_xminus, angle_to_span(hd.x_minus, xm));
    const Vector base = xm + ci.basis.col(0);
    // The x- part decays like lambda^-k while rounding along x+ grows like
    // lambda^k, so a finite orbit approaches U and then leaves it again. The
    // witness is the closest approach over a run long enough (lambda^k up to
    // 1e16) for rounding to take over. In rank > 3 the orbit turns inside U,
    // so the distance is measured to the whole subspace.
    const int k_max = std::max(2, static_cast<int>(std::ceil(16.0 * std::log(10.0) / std::log(hd.lambda))));
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& p : power_dynamics(sys, m, base, k_max)) gap = std::min(gap, angle_to_span(p.coords, ci.basis));
    worst_orbit = std::max(worst_orbit, gap);
  }
  rep.note("depth " + std::to_string(b.depth) + ": " + std::to_string(roots.size()) + " roots, " +
           std::to_string(space) + " space-like and " + std::to_string(light) + " light-like intersections");
  rep.add("space-like intersections", static_cast<double>(space), ">", 0.0);
  rep.add("pairs the classifier refused", static_cast<double>(refused), "==", 0.0);
  if (refused > 0) rep.note("first refusal: " + first_refusal);
  rep.add("pairs with the wrong Lorentz type", static_cast<double>(wrong_type), "==", 0.0);
  rep.add("intersections differing from the unimodular subspace", static_cast<double>(mismatched), "==", 0.0);
  rep.add("max principal angle", worst_angle, "<", 1e-7);
  rep.add("max angle between x- from the spectrum and from the root plane", worst_xminus, "<", 1e-4);
  rep.add("max closest approach of an x- + u orbit to the intersection", worst_orbit, "<", 1e-5);
  return rep;
}

CheckReport verify_spectra(const GeometricSystem& sys, const VerifyBudgets& b) {
  CheckReport rep;
  rep.name = "spectra";
  const Signature& sig = sys.signature();
  rep.note("signature (" + std::to_string(sig.n_plus) + "," + std::to_string(sig.n_minus) + "," +
           std::to_string(sig.n_zero) + "): " + sys.type_name());

  if (!sys.lorentzian()) {
    const Word w = b.word;
    const auto ev = eigenvalues(word_matrix(sys, w));
    int off_circle = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      std::ostringstream os;
      os << "eigenvalue " << ev[i].real();
      if (ev[i].imag() != 0.0) os << (ev[i].imag() > 0 ? "+" : "") << ev[i].imag() << "i";
      rep.note(os.str());
      if (std::abs(std::abs(ev[i]) - 1.0) > 1e-9) ++off_circle;
    }
    rep.note("element " + format_word(w, sys.rank()));
    rep.add("non-unimodular eigenvalues", off_circle, ">", 2.0);
    bool refused = false;
    try {
      classify(sys, word_matrix(sys, w));
    } catch (const Error& e) {
      refused = e.kind() == ErrorKind::NotLorentzian;
    }
    rep.require("classification refuses the non-Lorentzian form", refused);
    return rep;
  }

  const ElementStore store = enumerate(sys, b.core.hi);
  std::size_t counts[3] = {0, 0, 0};
  double worst_iso = 0.0, worst_invariance = 0.0, worst_reciprocal = 0.0, min_cross = 1.0;
  std::size_t order_mismatch = 0;
  const auto [first, last] = store.range(b.core.lo, b.core.hi);
  for (std::size_t id = first; id < last; ++id) {
    const GroupElement& e = store[id];
    const SpectralClass sc = classify(sys, e);
    ++counts[static_cast<int>(sc.kind)];
    if (sc.kind == TransformKind::Elliptic) {
      if (sc.order < 1) ++order_mismatch;
      continue;
    }
    const Matrix& u = sc.unimodular_basis;
    const Matrix mu = e.matrix * u;
    for (Eigen::Index c = 0; c < mu.cols(); ++c) worst_invariance = std::max(worst_invariance, angle_to_span(mu.col(c), u));
    if (sc.kind == TransformKind::Hyperbolic) {
      const auto& hd = *sc.dominant;
      worst_iso = std::max({worst_iso, std::abs(sys.bilinear(hd.x_plus, hd.x_plus)),
                            std::abs(sys.bilinear(hd.x_minus, hd.x_minus))});
      min_cross = std::min(min_cross, std::abs(sys.bilinear(hd.x_plus, hd.x_minus)));
      // Eigenvalues of the inverse are the reciprocals.
      const Matrix inv = sys.form_inverse() * e.matrix.transpose() * sys.form();
      const SpectralClass si = classify(sys, inv);
      worst_reciprocal = std::max(worst_reciprocal, std::abs(si.dominant->lambda - hd.lambda) / hd.lambda);
    } else {
      worst_iso = std::max(worst_iso, std::abs(sys.bilinear(sc.parabolic->x, sc.parabolic->x)));
      // A parabolic element never has finite order.
      Matrix p = Matrix::Identity(sys.rank(), sys.rank());
      for (int k = 1; k <= 12; ++k) {
        p = p * e.matrix;
        if ((p - Matrix::Identity(sys.rank(), sys.rank())).cwiseAbs().maxCoeff() < 1e-7) ++order_mismatch;
      }
    }
  }
  rep.note("lengths " + range_text(b.core) + ": elliptic " + std::to_string(counts[0]) + ", parabolic " +
           std::to_string(counts[1]) + ", hyperbolic " + std::to_string(counts[2]));
  rep.add("max |B(x,x)| of light-like eigenvectors", worst_iso, "<", 1e-8);
  rep.add("min |B(x+,x-)|", min_cross, ">", 1e-8);
  rep.add("max angle of M U against U", worst_invariance, "<", 1e-8);
  rep.add("max relative gap of lambda(w^-1) to lambda(w)", worst_reciprocal, "<", 1e-9);
  rep.add("finite order mismatches", static_cast<double>(order_mismatch), "==", 0.0);

  // Equivariance on random pairs.
  std::mt19937_64 rng(b.seed);
  std::uniform_int_distribution<std::size_t> pick(0, store.size() - 1);
  double worst_conj = 0.0;
  std::size_t kind_mismatch = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GroupElement& g = store[pick(rng)];
    const GroupElement& w = store[pick(rng)];
    const SpectralClass sw = classify(sys, w);
    if (sw.kind == TransformKind::Elliptic) continue;
    const Matrix ginv = sys.form_inverse() * g.matrix.transpose() * sys.form();
    const SpectralClass sc = classify(sys, Matrix(g.matrix * w.matrix * ginv));
    if (sc.kind != sw.kind) {
      ++kind_mismatch;
      continue;
    }
    auto cmp = [&](const Vector& direct, const Vector& moved) {
      const ProjectivePoint a = to_chart(direct, sys.form());
      const ProjectivePoint c = to_chart(g.matrix * moved, sys.form());
      if (a.at_infinity || c.at_infinity) return;
      worst_conj = std::max(worst_conj, chart_distance(a, c));
    };
    if (sw.kind == TransformKind::Hyperbolic) {
      cmp(sc.dominant->x_plus, sw.dominant->x_plus);
      cmp(sc.dominant->x_minus, sw.dominant->x_minus);
    } else {
      cmp(sc.parabolic->x, sw.parabolic->x);
    }
  }
  rep.add("conjugation kind mismatches", static_cast<double>(kind_mismatch), "==", 0.0);
  rep.add("max chart distance g.x(w) to x(gwg^-1)", worst_conj, "<", 1e-7);
  return rep;
}

CheckReport verify_weights(const GeometricSystem& sys, const VerifyBudgets& b) {
  CheckReport rep;
  rep.name = "weights";
  const auto weights = fundamental_weights(sys);
  const int n = sys.rank();
  Matrix w(n, n);
  for (const auto& wt : weights) w.col(wt.index) = wt.vector;
  rep.add("max |B(alpha_s, omega_t) - delta_st|", (sys.form() * w - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(),
          "<=", 1e-10);
  for (const auto& wt : weights) {
    std::ostringstream os;
    os << "omega_" << format_word(std::span<const Generator>(&wt.index, 1), n) << ": B = "
       << sys.bilinear(wt.vector, wt.vector) << " (" << to_string(causal_character(wt.vector, sys.form())) << ")";
    rep.note(os.str());
  }

  if (n == 3 && sys.lorentzian()) {
    const auto roots = roots_by_depth(sys, std::max(1, b.depth));
    const auto cis = codim2_spacelike(sys, roots);
    double worst = 0.0;
    for (const auto& wt : weights) {
      const Causal kind = causal_character(wt.vector, sys.form());
      if (kind == Causal::TimeLike) {
        rep.note("time-like weight " + std::to_string(wt.index) + " is not on L and is skipped");
        continue;
      }
      const ProjectivePoint p = to_chart(wt.vector, sys.form());
      double best = std::numeric_limits<double>::infinity();
      for (const auto& ci : cis) {
        if (!ci.point) continue;
        if (p.at_infinity || ci.point->at_infinity) {
          if (p.at_infinity && ci.point->at_infinity) best = std::min(best, (p.coords - ci.point->coords).norm());
          continue;
        }
        best = std::min(best, chart_distance(p, *ci.point));
      }
      worst = std::max(worst, best);
    }
    rep.add("max distance from a weight to a codimension-2 intersection", worst, "<", 1e-7);
  } else {
    rep.note("intersection coincidence is checked for Lorentzian rank 3 only");
  }

  // Weight orbits stay in the Tits cone.
  const ElementStore store = enumerate(sys, std::min(b.core.hi, 6));
  std::size_t failures = 0;
  for (const auto& e : store.elements()) {
    for (const auto& wt : weights) {
      const Descent d = descend_to_fundamental(sys, Vector(e.matrix * wt.vector), 10'000);
      if (!d.certified) ++failures;
    }
  }
  rep.add("weight images outside the Tits cone", static_cast<double>(failures), "==", 0.0);
  return rep;
}

namespace {

Vector random_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

Vector time_like_vector(const GeometricSystem& sys, std::mt19937_64& rng) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.form());
  const Vector t = es.eigenvectors().col(0);
  for (double spread = 0.5;; spread *= 0.5) {
    const Vector v = t + spread * random_vector(rng, sys.rank());
    if (sys.bilinear(v, v) < -1e-3 * v.squaredNorm()) return v;
  }
}

Vector space_like_vector(const GeometricSystem& sys, std::mt19937_64& rng) {
  while (true) {
    const Vector v = random_vector(rng, sys.rank());
    if (sys.bilinear(v, v) > 1e-3 * v.squaredNorm()) return v;
  }
}

Vector light_like_vector(const GeometricSystem& sys, std::mt19937_64& rng) {
  const Vector t = time_like_vector(sys, rng);
  const Vector d = random_vector(rng, sys.rank());
  // Solve B(t + s d, t + s d) = 0 for the positive root s.
  const double a = sys.bilinear(d, d), bb = sys.bilinear(t, d), c = sys.bilinear(t, t);
  const double disc = bb * bb - a * c;
  const double s = std::abs(a) < 1e-14 ? -c / (2.0 * bb) : (-bb + std::sqrt(disc)) / a;
  return t + s * d;
}

}  // namespace

CheckReport verify_base_independence(const GeometricSystem& sys, const VerifyBudgets& b) {
  CheckReport rep;
  rep.name = "bases";
  const ElementStore store = enumerate(sys, b.max_random_length);
  std::vector<std::size_t> hyperbolic;
  for (std::size_t id = 0; id < store.size(); ++id) {
    if (classify(sys, store[id]).kind == TransformKind::Hyperbolic) hyperbolic.push_back(id);
  }
  std::mt19937_64 rng(b.seed);
  std::shuffle(hyperbolic.begin(), hyperbolic.end(), rng);
  if (hyperbolic.size() > static_cast<std::size_t>(b.random_elements)) hyperbolic.resize(static_cast<std::size_t>(b.random_elements));
  rep.add("hyperbolic elements sampled", static_cast<double>(hyperbolic.size()), ">=",
          std::min<double>(b.random_elements, 1.0));

  double worst_spread = 0.0, worst_to_plus = 0.0;
  std::size_t bases = 0;
  for (std::size_t id : hyperbolic) {
    const SpectralClass sc = classify(sys, store[id]);
    const auto& hd = *sc.dominant;
    const int k = std::min(2000, static_cast<int>(std::ceil(14.0 * std::log(10.0) / std::log(hd.lambda))) + 2);
    std::vector<ProjectivePoint> limits;
    for (int j = 0; j < b.random_bases; ++j) {
      Vector y;
      do {
        switch (j % 3) {
          case 0: y = time_like_vector(sys, rng); break;
          case 1: y = space_like_vector(sys, rng); break;
          default: y = light_like_vector(sys, rng); break;
        }
        // Obstruction coefficient: the x+ component is B(y, x-) / B(x+, x-).
      } while (std::abs(sys.bilinear(y, hd.x_minus)) < 1e-3 * y.norm() * hd.x_minus.norm());
      limits.push_back(power_dynamics(sys, store[id].matrix, y, k).back());
      ++bases;
    }
    for (std::size_t i = 0; i < limits.size(); ++i) {
      if (limits[i].at_infinity) continue;
      if (!hd.plus.at_infinity) worst_to_plus = std::max(worst_to_plus, chart_distance(limits[i], hd.plus));
      for (std::size_t j = i + 1; j < limits.size(); ++j) {
        if (!limits[j].at_infinity) worst_spread = std::max(worst_spread, chart_distance(limits[i], limits[j]));
      }
    }
  }
  rep.note(std::to_string(bases) + " bases over " + std::to_string(hyperbolic.size()) + " elements up to length " +
           std::to_string(b.max_random_length));
  rep.add("max pairwise distance between limits", worst_spread, "<", 1e-6);
  rep.add("max distance from a limit to x+", worst_to_plus, "<", 1e-6);
  return rep;
}

std::vector<std::string> suite_names() { return {"isotropy", "density", "sandwich", "spectra", "weights", "bases"}; }

CheckReport run_suite(const std::string& suite, const GeometricSystem& sys, const VerifyBudgets& b) {
  if (suite == "isotropy") return verify_isotropy(sys, b);
  if (suite == "density") return verify_density(sys, b);
  if (suite == "sandwich") return verify_sandwich(sys, b);
  if (suite == "spectra") return verify_spectra(sys, b);
  if (suite == "weights") return verify_weights(sys, b);
  if (suite == "bases") return verify_base_independence(sys, b);
  throw Error(ErrorKind::InvalidInput, "unknown suite '" + suite + "'");
}

}  // namespace limroots
