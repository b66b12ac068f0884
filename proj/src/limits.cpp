#include "limroots/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "limroots/error.hpp"

namespace limroots {

const char* to_string(PointKind k) noexcept {
  switch (k) {
    case PointKind::ParabolicEig: return "parabolic-eig";
    case PointKind::HyperbolicEig: return "hyperbolic-eig";
    case PointKind::Orbit: return "orbit";
    case PointKind::Intersection: return "intersection";
    case PointKind::Weight: return "weight";
  }
  return "?";
}

PointKind point_kind_from_string(const std::string& s) {
  for (PointKind k : {PointKind::ParabolicEig, PointKind::HyperbolicEig, PointKind::Orbit, PointKind::Intersection,
                      PointKind::Weight}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorKind::InvalidInput, "unknown point kind '" + s + "'");
}

// PointSet

PointSet::PointSet(int rank, double dedup_eps) : rank_(rank), eps_(dedup_eps) {
  if (rank < 1) throw Error(ErrorKind::InvalidInput, "point set rank must be positive");
  if (!(dedup_eps > 0.0)) throw Error(ErrorKind::InvalidInput, "dedup_eps must be positive");
}

std::size_t PointSet::CellHash::operator()(const std::vector<long long>& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (long long v : key) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::vector<long long> PointSet::cell_of(const Vector& coords) const {
  // The last coordinate is determined by the others on the chart.
  std::vector<long long> key(static_cast<std::size_t>(std::max(rank_ - 1, 1)));
  for (std::size_t i = 0; i < key.size(); ++i) {
    key[i] = static_cast<long long>(std::floor(coords[static_cast<Eigen::Index>(i)] / eps_));
  }
  return key;
}

bool PointSet::near_existing(const ProjectivePoint& p) const {
  if (p.at_infinity) {
    for (std::uint32_t id : infinite_) {
      if ((points_[id].coords - p.coords).norm() < eps_) return true;
    }
    return false;
  }
  const std::vector<long long> base = cell_of(p.coords);
  std::vector<long long> probe = base;
  const std::size_t d = base.size();
  std::vector<int> offset(d, -1);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) probe[i] = base[i] + offset[i];
    if (auto it = cells_.find(probe); it != cells_.end()) {
      for (std::uint32_t id : it->second) {
        if ((points_[id].coords - p.coords).norm() < eps_) return true;
      }
    }
    std::size_t i = 0;
    while (i < d && offset[i] == 1) offset[i++] = -1;
    if (i == d) break;
    ++offset[i];
  }
  return false;
}

bool PointSet::insert(const ProjectivePoint& p, Provenance prov) {
  if (p.rank() != rank_) throw Error(ErrorKind::InvalidInput, "point rank does not match the set");
  if (near_existing(p)) return false;
  const auto id = static_cast<std::uint32_t>(points_.size());
  if (p.at_infinity) {
    infinite_.push_back(id);
  } else {
    cells_[cell_of(p.coords)].push_back(id);
  }
  points_.push_back(p);
  provenance_.push_back(std::move(prov));
  return true;
}

std::size_t PointSet::count(PointKind k) const {
  return static_cast<std::size_t>(
      std::count_if(provenance_.begin(), provenance_.end(), [k](const Provenance& p) { return p.kind == k; }));
}

std::size_t PointSet::count_at_infinity() const { return infinite_.size(); }

// Sampling

namespace {

struct CoreDirection {
  Vector rep;
  Provenance prov;
};

}  // namespace

PointSet sample_limit_roots(const GeometricSystem& sys, const ElementStore& store, LengthRange core,
                            LengthRange conj, const SampleOptions& opts, SampleReport* report) {
  if (!sys.lorentzian()) throw Error(ErrorKind::NotLorentzian, "limit roots need a Lorentzian form, got " + sys.type_name());
  if (core.empty() || conj.empty() || core.lo < 0 || conj.lo < 0) {
    throw Error(ErrorKind::InvalidInput, "length ranges must be non-empty and non-negative");
  }
  if (store.max_length() < std::max(core.hi, conj.hi)) {
    std::ostringstream msg;
    msg << "element store reaches length " << store.max_length() << ", need " << std::max(core.hi, conj.hi);
    throw Error(ErrorKind::BudgetExceeded, msg.str());
  }
  SampleReport rep;

  PointSet core_set(sys.rank(), opts.dedup_eps);
  std::vector<CoreDirection> directions;
  auto add_core = [&](const ProjectivePoint& p, PointKind kind, const Word& source) {
    Provenance prov{kind, source, {}};
    if (core_set.insert(p, prov)) directions.push_back({p.coords, std::move(prov)});
  };
  const auto [core_first, core_last] = store.range(core.lo, core.hi);
  for (std::size_t id = core_first; id < core_last; ++id) {
    const GroupElement& e = store[id];
    ++rep.core_elements;
    const SpectralClass sc = classify(sys, e, opts.spectral);
    switch (sc.kind) {
      case TransformKind::Elliptic:
        ++rep.elliptic;
        break;
      case TransformKind::Parabolic:
        ++rep.parabolic;
        if (opts.parabolic) add_core(sc.parabolic->direction, PointKind::ParabolicEig, e.word);
        break;
      case TransformKind::Hyperbolic:
        ++rep.hyperbolic;
        if (opts.hyperbolic) {
          add_core(sc.dominant->plus, PointKind::HyperbolicEig, e.word);
          add_core(sc.dominant->minus, PointKind::HyperbolicEig, e.word);
        }
        break;
    }
  }
  rep.core_directions = directions.size();
  if (directions.empty()) {
    std::ostringstream msg;
    msg << "no light-like eigendirection of the requested kinds among " << rep.core_elements
        << " elements of length " << core.lo << ".." << core.hi << " (elliptic " << rep.elliptic << ", parabolic "
        << rep.parabolic << ", hyperbolic " << rep.hyperbolic << ")";
    throw Error(ErrorKind::EmptyInput, msg.str());
  }

  const auto [conj_first, conj_last] = store.range(conj.lo, conj.hi);
  rep.conjugators = conj_last - conj_first;
  rep.raw_points = rep.conjugators * directions.size();
  if (rep.raw_points > opts.max_raw_points) {
    std::ostringstream msg;
    msg << rep.raw_points << " raw points exceed the cap of " << opts.max_raw_points;
    if (report) *report = rep;
    throw Error(ErrorKind::BudgetExceeded, msg.str());
  }

  PointSet out(sys.rank(), opts.dedup_eps);
  // Images are computed in parallel per batch of conjugators and merged in a
  // fixed order, so the first-insertion-wins result does not depend on threads.
  const std::size_t batch = 2048;
  const int threads = std::max(1, opts.threads);
  std::vector<std::vector<ProjectivePoint>> images;
  for (std::size_t lo = conj_first; lo < conj_last; lo += batch) {
    const std::size_t hi = std::min(conj_last, lo + batch);
    images.assign(hi - lo, {});
    auto work = [&](std::size_t worker) {
      for (std::size_t g = lo + worker; g < hi; g += static_cast<std::size_t>(threads)) {
        auto& slot = images[g - lo];
        slot.reserve(directions.size());
        for (const auto& d : directions) slot.push_back(to_chart(store[g].matrix * d.rep, sys.form()));
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, static_cast<std::size_t>(t));
      for (auto& th : pool) th.join();
    }
    for (std::size_t g = lo; g < hi; ++g) {
      for (std::size_t i = 0; i < directions.size(); ++i) {
        out.insert(images[g - lo][i], {directions[i].prov.kind, directions[i].prov.source, store[g].word});
      }
    }
  }
  if (report) *report = rep;
  return out;
}

PointSet orbit_accumulate(const GeometricSystem& sys, const ProjectivePoint& base, const ElementStore& store,
                          int min_length, int max_length, double dedup_eps) {
  if (store.max_length() < max_length) throw Error(ErrorKind::BudgetExceeded, "element store is too short for the orbit");
  PointSet out(sys.rank(), dedup_eps);
  const auto [first, last] = store.range(min_length, max_length);
  for (std::size_t id = first; id < last; ++id) {
    out.insert(act(store[id].matrix, base, sys.form()), {PointKind::Orbit, store[id].word, {}});
  }
  if (out.size() < 2) {
    std::ostringstream msg;
    msg << "orbit degenerates to " << out.size() << " point(s)";
    throw Error(ErrorKind::EmptyInput, msg.str());
  }
  return out;
}

std::vector<ProjectivePoint> power_dynamics(const GeometricSystem& sys, const Matrix& w, const Vector& base,
                                            int k_max) {
  if (k_max < 0) throw Error(ErrorKind::InvalidInput, "k_max must be non-negative");
  std::vector<ProjectivePoint> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  Vector v = base / base.norm();
  out.push_back(to_chart(v, sys.form()));
  for (int k = 1; k <= k_max; ++k) {
    v = w * v;
    v /= v.norm();
    out.push_back(to_chart(v, sys.form()));
  }
  return out;
}

std::vector<Vector> inversion_set(const GeometricSystem& sys, std::span<const Generator> word) {
  std::vector<Vector> roots;
  roots.reserve(word.size());
  Matrix prefix = Matrix::Identity(sys.rank(), sys.rank());
  for (std::size_t k = 0; k < word.size(); ++k) {
    const Generator s = word[k];
    if (s < 0 || s >= sys.rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
    Vector beta = prefix.col(s);
    const double scale = beta.cwiseAbs().maxCoeff();
    if (!is_positive_root(beta)) {
      std::ostringstream msg;
      msg << "word is not reduced: inversion root " << k + 1 << " is negative";
      throw Error(ErrorKind::NotReduced, msg.str());
    }
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if ((roots[j] - beta).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, scale)) {
        std::ostringstream msg;
        msg << "word is not reduced: inversion roots " << j + 1 << " and " << k + 1 << " coincide";
        throw Error(ErrorKind::NotReduced, msg.str());
      }
    }
    roots.push_back(std::move(beta));
    prefix = prefix * sys.generator(s);
  }
  return roots;
}

namespace {

Word unroll(const PeriodicWord& pw, int horizon) {
  Word w = pw.prefix;
  for (int k = 0; k < horizon; ++k) w.insert(w.end(), pw.period.begin(), pw.period.end());
  return w;
}

}  // namespace

void certify_reduced(const GeometricSystem& sys, const PeriodicWord& pw, int horizon) {
  if (pw.period.empty()) throw Error(ErrorKind::InvalidInput, "period must be non-empty");
  if (horizon < 1) throw Error(ErrorKind::InvalidInput, "horizon must be positive");
  const Word w = unroll(pw, horizon);
  inversion_set(sys, w);
}

WordLimit word_limit_root(const GeometricSystem& sys, const PeriodicWord& pw, int horizon) {
  certify_reduced(sys, pw, horizon);
  WordLimit out;
  out.period_class = classify(sys, word_matrix(sys, pw.period));
  Vector x;
  switch (out.period_class.kind) {
    case TransformKind::Elliptic:
      throw Error(ErrorKind::EllipticPeriod, "period is elliptic: not an infinite reduced word witness");
    case TransformKind::Hyperbolic:
      x = out.period_class.dominant->x_plus;
      break;
    case TransformKind::Parabolic:
      x = out.period_class.parabolic->x;
      break;
  }
  out.point = to_chart(word_matrix(sys, pw.prefix) * x, sys.form());

  // Empirical check: the last inversion root w_{k-1}(alpha_{s_k}) of the
  // unrolled word, evaluated right to left with rescaling.
  const Word w = unroll(pw, horizon);
  out.orbit_root = w.back();
  Vector v = Vector::Unit(sys.rank(), w.back());
  for (auto it = w.rbegin() + 1; it != w.rend(); ++it) {
    v = sys.generator(*it) * v;
    v /= v.norm();
  }
  const ProjectivePoint empirical = to_chart(v, sys.form());
  if (empirical.at_infinity || out.point.at_infinity) {
    out.orbit_residual = std::numeric_limits<double>::infinity();
  } else {
    out.orbit_residual = chart_distance(empirical, out.point);
  }
  return out;
}

// Hausdorff

namespace {

std::vector<const Vector*> finite_points(const std::vector<ProjectivePoint>& pts, std::size_t& excluded) {
  std::vector<const Vector*> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.at_infinity) {
      ++excluded;
    } else {
      out.push_back(&p.coords);
    }
  }
  return out;
}

// Directed distance with early break; random order makes the break fire early.
double directed(std::vector<const Vector*> a, std::vector<const Vector*> b) {
  std::mt19937_64 rng(0x5eed);
  std::shuffle(a.begin(), a.end(), rng);
  std::shuffle(b.begin(), b.end(), rng);
  double cmax = 0.0;
  for (const Vector* x : a) {
    double cmin = std::numeric_limits<double>::infinity();
    for (const Vector* y : b) {
      const double d = (*x - *y).norm();
      if (d < cmax) {
        cmin = d;
        break;
      }
      cmin = std::min(cmin, d);
    }
    cmax = std::max(cmax, cmin);
  }
  return cmax;
}

}  // namespace

HausdorffResult hausdorff(const std::vector<ProjectivePoint>& a, const std::vector<ProjectivePoint>& b) {
  HausdorffResult r;
  const auto fa = finite_points(a, r.excluded);
  const auto fb = finite_points(b, r.excluded);
  if (fa.empty() || fb.empty()) throw Error(ErrorKind::EmptyInput, "Hausdorff distance of an empty point set");
  r.distance = std::max(directed(fa, fb), directed(fb, fa));
  return r;
}

HausdorffResult hausdorff(const PointSet& a, const PointSet& b) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::InvalidInput, "point sets have different ranks");
  return hausdorff(a.points(), b.points());
}

}  // namespace limroots
