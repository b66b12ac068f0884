#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "limroots/coxeter.hpp"
#include "limroots/limits.hpp"

namespace limroots {

struct Measurement {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  /// "<", "<=", ">", "==" ...
  std::string relation;
  bool pass = false;
};

struct CheckReport {
  std::string name;
  bool pass = true;
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;

  void add(std::string what, double value, std::string relation, double threshold);
  void require(std::string what, bool ok);
  void note(std::string text) { notes.push_back(std::move(text)); }
  nlohmann::json to_json() const;
};

struct VerifyBudgets {
  LengthRange core{1, 4};
  LengthRange conj{0, 4};
  int depth = 5;
  std::uint64_t seed = 1;
  double dedup_eps = 1e-6;
  int threads = 1;
  /// Element checked by the spectra suite on non-Lorentzian graphs.
  Word word;
  /// density: hyperbolic sets at budgets b (core 1..b, conj 0..b).
  std::vector<int> density_budgets{2, 4, 6};
  int pair_budget = 8;
  double pair_threshold = 0.15;
  /// base-point independence sample sizes.
  int random_elements = 100;
  int random_bases = 10;
  int max_random_length = 8;
};

inline constexpr double kIsotropyBound = 1e-7;
inline constexpr double kHullBound = 1e-9;

/// Every sampled limit root is isotropic and inside conv(Delta).
CheckReport verify_isotropy(const GeometricSystem& sys, const VerifyBudgets& b);
/// Hausdorff distances shrink with the budget; parabolic and hyperbolic
/// samples are mutually close.
CheckReport verify_density(const GeometricSystem& sys, const VerifyBudgets& b);
/// L_hyp pieces coincide with unimodular subspaces and attract orbits of bases with no x+ component.
CheckReport verify_sandwich(const GeometricSystem& sys, const VerifyBudgets& b);
/// Lorentzian: classification invariants up to core.hi. Otherwise: the
/// spectrum of b.word and whether it fits any Lorentz type.
CheckReport verify_spectra(const GeometricSystem& sys, const VerifyBudgets& b);
/// Weight identities, causal type, coincidence with L_hyp points (rank 3)
/// and Tits-cone membership of weight orbits.
CheckReport verify_weights(const GeometricSystem& sys, const VerifyBudgets& b);
/// power_dynamics limits are independent of the base point.
CheckReport verify_base_independence(const GeometricSystem& sys, const VerifyBudgets& b);

/// Dispatch by name: isotropy, density, sandwich, spectra, weights, bases.
CheckReport run_suite(const std::string& suite, const GeometricSystem& sys, const VerifyBudgets& b);
std::vector<std::string> suite_names();

}  // namespace limroots
