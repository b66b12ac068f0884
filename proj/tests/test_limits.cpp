#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "limroots/error.hpp"
#include "limroots/limits.hpp"
#include "support.hpp"

using namespace limroots;
using support::vec;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Unsupported;
}

SampleOptions only(bool parabolic, bool hyperbolic, double eps = 1e-6) {
  SampleOptions o;
  o.parabolic = parabolic;
  o.hyperbolic = hyperbolic;
  o.dedup_eps = eps;
  return o;
}

}  // namespace

TEST(PointSetTest, MergesWithinEps) {
  const auto sys = support::universal3(1.0);
  PointSet set(3, 1e-6);
  EXPECT_TRUE(set.insert(to_chart(vec({0.5, 0.5, 0.0}), sys.form()), {PointKind::Orbit, {}, {}}));
  EXPECT_FALSE(set.insert(to_chart(vec({0.5 + 4e-7, 0.5, 0.0}), sys.form()), {PointKind::Weight, {0}, {}}));
  EXPECT_TRUE(set.insert(to_chart(vec({0.5 + 4e-6, 0.5, 0.0}), sys.form()), {PointKind::Weight, {0}, {}}));
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.provenance()[0].kind, PointKind::Orbit);
  EXPECT_EQ(set.count(PointKind::Weight), 1u);
  // At infinity: deduplicated on unit directions.
  EXPECT_TRUE(set.insert(to_chart(vec({1.0, -1.0, 0.0}), sys.form()), {}));
  EXPECT_FALSE(set.insert(to_chart(vec({-2.0, 2.0, 0.0}), sys.form()), {}));
  EXPECT_EQ(set.count_at_infinity(), 1u);
}

TEST(PointSetTest, NeighbouringCells) {
  // Two points straddling a grid cell boundary still merge.
  const auto sys = support::universal3(1.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointSet set(3, 1e-3);
  std::vector<ProjectivePoint> pts;
  for (int i = 0; i < 300; ++i) {
    const double a = u(rng), b = u(rng) * (1 - a);
    pts.push_back(to_chart(vec({a, b, 1 - a - b}), sys.form()));
    set.insert(pts.back(), {});
  }
  // Oracle: greedy first-wins dedup by brute force.
  std::vector<Vector> kept;
  for (const auto& p : pts) {
    bool near = false;
    for (const auto& k : kept) near |= (k - p.coords).norm() < 1e-3;
    if (!near) kept.push_back(p.coords);
  }
  EXPECT_EQ(set.size(), kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) EXPECT_EQ(set.points()[i].coords, kept[i]);
}

TEST(Sample, ParabolicMidpoints) {
  const auto sys = support::universal3(1.0);
  const auto store = enumerate(sys, 2);
  const auto set = sample_limit_roots(sys, store, {2, 2}, {0, 0});
  ASSERT_EQ(set.size(), 3u);
  std::set<std::array<long, 3>> got;
  for (const auto& p : set.points()) got.insert({std::lround(2 * p.coords[0]), std::lround(2 * p.coords[1]), std::lround(2 * p.coords[2])});
  EXPECT_EQ(got, (std::set<std::array<long, 3>>{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(set.count(PointKind::ParabolicEig), 3u);
}

TEST(Sample, TwelveParabolicDirections) {
  const auto sys = support::universal3(1.0);
  const auto store = enumerate(sys, 6);
  for (double eps : {1e-8, 1e-6, 1e-4}) {
    const auto set = sample_limit_roots(sys, store, {1, 6}, {0, 0}, only(true, false, eps));
    EXPECT_EQ(set.size(), 12u) << "eps " << eps;
  }
}

TEST(Sample, HyperbolicCountIsStable) {
  const auto sys = support::universal3(1.0);
  const auto store = enumerate(sys, 6);
  std::size_t first = 0;
  for (double eps : {1e-8, 1e-6, 1e-4}) {
    const auto set = sample_limit_roots(sys, store, {1, 6}, {0, 0}, only(false, true, eps));
    if (first == 0) first = set.size();
    EXPECT_EQ(set.size(), first) << "eps " << eps;
    for (const auto& p : set.points()) EXPECT_LT(std::abs(p.bnorm), 1e-9);
  }
  EXPECT_GT(first, 0u);
}

TEST(Sample, PointsAreIsotropicAndInHull) {
  for (const auto& name : {"universal3:1.1", "fig1a", "fig1b"}) {
    const auto sys = support::named(name);
    const auto store = enumerate(sys, 4);
    const auto set = sample_limit_roots(sys, store, {1, 4}, {0, 3});
    ASSERT_FALSE(set.empty());
    for (const auto& p : set.points()) {
      EXPECT_LT(std::abs(p.bnorm), 1e-7) << name;
      EXPECT_GT(p.coords.minCoeff(), -1e-9) << name;
    }
  }
}

TEST(Sample, ConjugationIsEquivariant) {
  const auto sys = support::universal3(1.1);
  const auto store = enumerate(sys, 3);
  const auto set = sample_limit_roots(sys, store, {2, 3}, {1, 2});
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& prov = set.provenance()[i];
    Word w = prov.conjugator;
    w.insert(w.end(), prov.source.begin(), prov.source.end());
    w.insert(w.end(), prov.conjugator.rbegin(), prov.conjugator.rend());
    const auto sc = classify(sys, element_of(sys, w));
    ASSERT_EQ(sc.kind, TransformKind::Hyperbolic);
    const double d = std::min(chart_distance(sc.dominant->plus, set.points()[i]),
                              chart_distance(sc.dominant->minus, set.points()[i]));
    EXPECT_LT(d, 1e-8);
  }
}

TEST(Sample, ThreadsDoNotChangeTheResult) {
  const auto sys = support::named("fig1b");
  const auto store = enumerate(sys, 4);
  SampleOptions one, four;
  four.threads = 4;
  const auto a = sample_limit_roots(sys, store, {2, 3}, {1, 4}, one);
  const auto b = sample_limit_roots(sys, store, {2, 3}, {1, 4}, four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.points()[i].coords, b.points()[i].coords);
    EXPECT_EQ(a.provenance()[i], b.provenance()[i]);
  }
}

TEST(Sample, Errors) {
  const auto sys = support::universal3(1.0);
  const auto store = enumerate(sys, 3);
  EXPECT_EQ(kind_of([&] { sample_limit_roots(sys, store, {1, 1}, {0, 0}); }), ErrorKind::EmptyInput);
  EXPECT_EQ(kind_of([&] { sample_limit_roots(sys, store, {1, 5}, {0, 0}); }), ErrorKind::BudgetExceeded);
  SampleOptions capped;
  capped.max_raw_points = 10;
  EXPECT_EQ(kind_of([&] { sample_limit_roots(sys, store, {2, 3}, {0, 3}, capped); }), ErrorKind::BudgetExceeded);
  const auto fig8 = support::named("fig8");
  const auto store8 = enumerate(fig8, 2);
  EXPECT_EQ(kind_of([&] { sample_limit_roots(fig8, store8, {1, 2}, {0, 0}); }), ErrorKind::NotLorentzian);
}

TEST(Orbit, TimeLikeBaseApproachesTheCone) {
  const auto sys = support::universal3(1.1);
  const auto store = enumerate(sys, 9);
  const auto base = to_chart(vec({1.0, 1.0, 1.0}), sys.form());
  ASSERT_LT(base.bnorm, 0.0);
  double prev = 1e9;
  for (int lo : {1, 4, 7}) {
    const auto set = orbit_accumulate(sys, base, store, lo, lo + 2);
    double worst = 0.0;
    for (const auto& p : set.points()) worst = std::max(worst, std::abs(p.bnorm));
    EXPECT_LT(worst, prev) << "min length " << lo;
    prev = worst;
  }
}

TEST(Orbit, SimpleRootOrbitNearsLimitRoots) {
  const auto sys = support::universal3(1.0);
  const auto store = enumerate(sys, 9);
  const auto roots = sample_limit_roots(sys, store, {1, 6}, {0, 3});
  const auto base = to_chart(Vector::Unit(3, 0), sys.form());
  const auto early = hausdorff(orbit_accumulate(sys, base, store, 1, 3), roots).distance;
  const auto late = hausdorff(orbit_accumulate(sys, base, store, 7, 9), roots).distance;
  EXPECT_LT(late, early);
}

TEST(Orbit, NeedsTwoPoints) {
  const auto sys = support::universal3(1.0);
  const auto store = enumerate(sys, 2);
  EXPECT_EQ(kind_of([&] { orbit_accumulate(sys, to_chart(Vector::Unit(3, 0), sys.form()), store, 0, 0); }),
            ErrorKind::EmptyInput);
  EXPECT_EQ(kind_of([&] { orbit_accumulate(sys, to_chart(Vector::Unit(3, 0), sys.form()), store, 1, 5); }),
            ErrorKind::BudgetExceeded);
}

TEST(Dynamics, Rank2Hyperbolic) {
  const auto sys = support::rank2(1.5);
  const auto traj = power_dynamics(sys, word_matrix(sys, Word{0, 1}), Vector::Unit(2, 0), 40);
  ASSERT_EQ(traj.size(), 41u);
  const double lam = (7.0 + 3.0 * std::sqrt(5.0)) / 2.0;
  const double x0 = 3.0 / (11.0 - lam);
  EXPECT_NEAR(traj.back().coords[0], x0, 1e-10);
  EXPECT_NEAR(traj.back().coords[0], 0.723607, 1e-6);
}

TEST(Dynamics, UniversalParabolic) {
  const auto sys = support::universal3(1.0);
  const auto traj = power_dynamics(sys, word_matrix(sys, Word{0, 1}), Vector::Unit(3, 2), 100000);
  // Polynomial convergence: distance ~ 1/k.
  EXPECT_LT((traj.back().coords - vec({0.5, 0.5, 0.0})).norm(), 1e-4);
}

TEST(Dynamics, RepellingPointIsFixed) {
  const auto sys = support::universal3(1.0);
  const Matrix m = word_matrix(sys, Word{0, 1, 2});
  const auto sc = classify(sys, m);
  // Rounding grows by lambda ~ 17.9 per step away from the repelling point, so
  // only a couple of steps are meaningful in double precision.
  const auto traj = power_dynamics(sys, m, sc.dominant->x_minus, 2);
  for (const auto& p : traj) EXPECT_LT(chart_distance(p, sc.dominant->minus), 1e-9);
}

TEST(Dynamics, BaseWithoutXPlusAccumulatesInU) {
  const auto sys = support::universal3(1.1);
  const Matrix m = word_matrix(sys, Word{0, 1});
  const auto sc = classify(sys, m);
  ASSERT_EQ(sc.kind, TransformKind::Hyperbolic);
  const Vector u = sc.unimodular_basis.col(0);
  const Vector base = sc.dominant->x_minus + u;
  // The x- part shrinks like lambda^-k with lambda ~ 2.43.
  const auto traj = power_dynamics(sys, m, base, 20);
  const auto target = to_chart(u, sys.form());
  EXPECT_LT(chart_distance(traj.back(), target), 1e-5);
  EXPECT_LT(chart_distance(traj.back(), target), chart_distance(traj.front(), target));
}

TEST(Inversions, Small) {
  const auto sys = support::universal3(1.0);
  const auto one = inversion_set(sys, Word{0});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], Vector::Unit(3, 0));
  const auto two = inversion_set(sys, Word{0, 1});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], Vector::Unit(3, 0));
  EXPECT_LT((two[1] - sys.generator(0) * Vector::Unit(3, 1)).norm(), 1e-15);
  EXPECT_EQ(kind_of([&] { inversion_set(sys, Word{0, 0}); }), ErrorKind::NotReduced);
}

TEST(Inversions, SizeIsLength) {
  const auto sys = support::named("fig1a");
  const auto store = enumerate(sys, 6);
  for (const auto& e : store.elements()) {
    const auto inv = inversion_set(sys, e.word);
    EXPECT_EQ(static_cast<int>(inv.size()), e.length);
    for (const auto& g : inv) EXPECT_NEAR(g.dot(sys.form() * g), 1.0, 1e-9);
  }
}

TEST(WordLimit, Stu) {
  const auto sys = support::universal3(1.0);
  const auto wl = word_limit_root(sys, {{}, {0, 1, 2}});
  ASSERT_EQ(wl.period_class.kind, TransformKind::Hyperbolic);
  EXPECT_NEAR(wl.period_class.dominant->lambda, 9.0 + 4.0 * std::sqrt(5.0), 1e-8);
  // Dominant eigenvector of [[15,10,-6],[6,3,-2],[2,2,-1]] by an independent route.
  const Matrix m = support::mat({{15, 10, -6}, {6, 3, -2}, {2, 2, -1}});
  EXPECT_LT((word_matrix(sys, Word{0, 1, 2}) - m).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::JacobiSVD<Matrix> svd(m - (9.0 + 4.0 * std::sqrt(5.0)) * Matrix::Identity(3, 3), Eigen::ComputeFullV);
  const auto x = to_chart(svd.matrixV().col(2), sys.form());
  EXPECT_LT(chart_distance(wl.point, x), 1e-8);
  EXPECT_LT(wl.orbit_residual, 1e-6);
}

TEST(WordLimit, StAndTsAgree) {
  const auto sys = support::universal3(1.0);
  const auto a = word_limit_root(sys, {{}, {0, 1}});
  const auto b = word_limit_root(sys, {{}, {1, 0}});
  EXPECT_LT((a.point.coords - vec({0.5, 0.5, 0.0})).norm(), 1e-12);
  EXPECT_LT(chart_distance(a.point, b.point), 1e-12);
  EXPECT_EQ(a.period_class.kind, TransformKind::Parabolic);
}

TEST(WordLimit, PrefixActs) {
  const auto sys = support::universal3(1.0);
  const auto wl = word_limit_root(sys, {{2}, {0, 1}});
  const auto expected = act(sys.generator(2), to_chart(vec({0.5, 0.5, 0.0}), sys.form()), sys.form());
  EXPECT_LT(chart_distance(wl.point, expected), 1e-12);
}

TEST(WordLimit, NotReduced) {
  const auto sys = support::universal3(1.0);
  EXPECT_EQ(kind_of([&] { word_limit_root(sys, {{}, {0, 0}}); }), ErrorKind::NotReduced);
  // u (u s t)^inf starts with uu.
  EXPECT_EQ(kind_of([&] { word_limit_root(sys, {{2}, {2, 0, 1}}); }), ErrorKind::NotReduced);
  // In A2-like pieces the braid relation makes (st)^inf non-reduced.
  const auto fig1a = support::named("fig1a");
  EXPECT_EQ(kind_of([&] { word_limit_root(fig1a, {{}, {1, 2}}); }), ErrorKind::NotReduced);
}

TEST(Hausdorff, Basics) {
  const auto sys = support::universal3(1.0);
  PointSet a(3, 1e-9), b(3, 1e-9);
  const Vector pts[] = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0.2, 0.3, 0.5})};
  for (const auto& p : pts) {
    a.insert(to_chart(p, sys.form()), {});
    b.insert(to_chart(p, sys.form()), {});
  }
  EXPECT_EQ(hausdorff(a, b).distance, 0.0);
  b.insert(to_chart(vec({0, 0, 1}), sys.form()), {});
  // a is a subset of b: the distance is the farthest point of b from a.
  EXPECT_NEAR(hausdorff(a, b).distance, (vec({0, 0, 1}) - vec({0.2, 0.3, 0.5})).norm(), 1e-15);
  b.insert(to_chart(vec({1, -1, 0}), sys.form()), {});
  EXPECT_EQ(hausdorff(a, b).excluded, 1u);
  PointSet empty(3, 1e-9);
  EXPECT_EQ(kind_of([&] { hausdorff(a, empty); }), ErrorKind::EmptyInput);
}
