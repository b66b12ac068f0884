#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "limroots/coxeter.hpp"
#include "limroots/projective.hpp"
#include "limroots/spectral.hpp"

namespace limroots {

enum class PointKind { ParabolicEig, HyperbolicEig, Orbit, Intersection, Weight };

const char* to_string(PointKind k) noexcept;
PointKind point_kind_from_string(const std::string& s);

struct Provenance {
  PointKind kind = PointKind::Orbit;
  Word source;
  Word conjugator;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Deduplicated collection of projective points with per-point provenance.
/// Finite points closer than dedup_eps (Euclidean chart distance) to an
/// already stored point are dropped; the first insertion wins. Points at
/// infinity are deduplicated on their unit directions.
class PointSet {
 public:
  PointSet(int rank, double dedup_eps);

  /// Returns false when the point merged into an existing one.
  bool insert(const ProjectivePoint& p, Provenance prov);

  int rank() const { return rank_; }
  double dedup_eps() const { return eps_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<ProjectivePoint>& points() const { return points_; }
  const std::vector<Provenance>& provenance() const { return provenance_; }
  std::size_t count(PointKind k) const;
  std::size_t count_at_infinity() const;

 private:
  struct CellHash {
    std::size_t operator()(const std::vector<long long>& key) const noexcept;
  };
  std::vector<long long> cell_of(const Vector& coords) const;
  bool near_existing(const ProjectivePoint& p) const;

  int rank_;
  double eps_;
  std::vector<ProjectivePoint> points_;
  std::vector<Provenance> provenance_;
  std::unordered_map<std::vector<long long>, std::vector<std::uint32_t>, CellHash> cells_;
  std::vector<std::uint32_t> infinite_;
};

/// Closed interval of word lengths.
struct LengthRange {
  int lo = 0;
  int hi = 0;

  bool contains(int k) const { return lo <= k && k <= hi; }
  bool empty() const { return hi < lo; }
};

struct SampleOptions {
  double dedup_eps = 1e-6;
  bool parabolic = true;
  bool hyperbolic = true;
  int threads = 1;
  /// Upper bound on directions x conjugators before any work is done.
  std::size_t max_raw_points = 200'000'000;
  SpectralOptions spectral;
};

struct SampleReport {
  std::size_t core_elements = 0;
  std::size_t elliptic = 0;
  std::size_t parabolic = 0;
  std::size_t hyperbolic = 0;
  std::size_t core_directions = 0;
  std::size_t conjugators = 0;
  std::size_t raw_points = 0;
};

/// Light-like eigendirections of infinite-order elements with length in
/// `core`, pushed through every conjugator g with length in `conj`: g . x is
/// the eigendirection of g w g^-1, so no eigensolve happens per conjugate.
///
/// Throws NotLorentzian, BudgetExceeded when the store is too short or the raw
/// point count exceeds the cap, and EmptyInput when no direction of the
/// requested kinds exists in the core range.
PointSet sample_limit_roots(const GeometricSystem& sys, const ElementStore& store, LengthRange core,
                            LengthRange conj, const SampleOptions& opts = {}, SampleReport* report = nullptr);

/// {w . base : min_length <= l(w) <= max_length}, deduplicated.
PointSet orbit_accumulate(const GeometricSystem& sys, const ProjectivePoint& base, const ElementStore& store,
                          int min_length, int max_length, double dedup_eps = 1e-6);

/// Trajectory (w^k . base) for k = 0..k_max. The vector is rescaled at every
/// step so long trajectories do not overflow.
std::vector<ProjectivePoint> power_dynamics(const GeometricSystem& sys, const Matrix& w, const Vector& base,
                                            int k_max);

/// Infinite word prefix . period . period . ...
struct PeriodicWord {
  Word prefix;
  Word period;
};

inline constexpr int kReducedHorizon = 50;

/// Checks that every inversion root of prefix . period^horizon is positive.
/// Throws NotReduced naming the first failing position.
void certify_reduced(const GeometricSystem& sys, const PeriodicWord& pw, int horizon = kReducedHorizon);

struct WordLimit {
  ProjectivePoint point;
  /// Classification of the period as a group element.
  SpectralClass period_class;
  /// Chart distance between the limit and w_k . alpha at k = |prefix| + horizon * |period|.
  double orbit_residual = 0.0;
  Generator orbit_root = 0;
};

/// The unique limit root of an infinite reduced word with periodic tail:
/// q . x(p) where q is the prefix and x(p) the dominant (hyperbolic) or
/// light-like (parabolic) eigendirection of the period p. Throws NotReduced or
/// EllipticPeriod.
WordLimit word_limit_root(const GeometricSystem& sys, const PeriodicWord& pw, int horizon = kReducedHorizon);

/// Positive roots w_{k-1}(alpha_{s_k}) for k = 1..l(w). Throws NotReduced
/// when one is negative or repeats.
std::vector<Vector> inversion_set(const GeometricSystem& sys, std::span<const Generator> word);

struct HausdorffResult {
  double distance = 0.0;
  /// Points at infinity skipped on either side.
  std::size_t excluded = 0;
};

/// Symmetric Hausdorff distance in the affine chart. Throws EmptyInput if
/// either side has no finite point.
HausdorffResult hausdorff(const PointSet& a, const PointSet& b);
HausdorffResult hausdorff(const std::vector<ProjectivePoint>& a, const std::vector<ProjectivePoint>& b);

}  // namespace limroots
