#pragma once

#include <cstdint>
#include <vector>

#include "rmatch/model.hpp"

namespace rmatch {

struct AlphaDistribution {
  enum class Kind { kBernoulliHalf, kUniform, kConstant };
  Kind kind = Kind::kBernoulliHalf;
  double lo = 0.0;  // kUniform bounds, or the kConstant value in lo
  double hi = 1.0;

  static AlphaDistribution bernoulli_half() { return {}; }
  static AlphaDistribution uniform(double a, double b) { return {Kind::kUniform, a, b}; }
  static AlphaDistribution constant(double v) { return {Kind::kConstant, v, v}; }
};

struct GenConfig {
  int n_students = 10;
  int n_colleges = 5;
  int quota = 1;
  double beta = 0.0;
  std::vector<double> reputations{100, 90, 80, 70, 60};
  AlphaDistribution alpha;
  double f_max = 100.0;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void check() const;
};

/// Identifies the substreams of one generated instance.
struct TrialKey {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// Taste g_s(c) ~ U[0,100]; college value beta * reputation + (1 - beta) * taste;
/// list by descending value, ties by college index.
std::vector<PreferenceList> gen_student_prefs(const GenConfig& config, TrialKey key);

/// i.i.d. Uniform[0, f_max].
std::vector<double> gen_scores(const GenConfig& config, TrialKey key);

std::vector<double> gen_alphas(const GenConfig& config, TrialKey key);

/// Reputation order c1 > c2 > ... (the common list when beta = 1).
PreferenceList reputation_order(const GenConfig& config);

/// Instance with ids s1..sn / c1..cm, bonus h(r) = 110 - 10r, and the true
/// student preferences stored as its student_prefs.
Instance gen_instance(const GenConfig& config, TrialKey key);

}  // namespace rmatch
