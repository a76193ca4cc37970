#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rmatch/simgen.hpp"
#include "rmatch/trials.hpp"

namespace rmatch {

enum class ExperimentKind { kWelfareSweep, kStrategyCount, kPerRank };
enum class Mechanism { kHybrid, kPureGS };
enum class StrategicSelection { kLowest, kRandom };
enum class ReportMode { kTruthful, kStrategyS };

const char* to_string(Mechanism m);
const char* to_string(ReportMode m);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kWelfareSweep;
  GenConfig gen;
  std::uint64_t seed = 1;
  int trials = 1000;
  std::uint64_t first_trial = 0;  // trial indices are first_trial .. first_trial + trials - 1
  double beta_step = 0.01;
  std::vector<Mechanism> mechanisms{Mechanism::kHybrid, Mechanism::kPureGS};
  std::optional<int> strategic_count;  // unset: every k in 0..n_students
  StrategicSelection selection = StrategicSelection::kRandom;
  std::vector<double> per_rank_betas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  Execution execution = Execution::kParallel;

  /// Throws std::invalid_argument on an inconsistent spec.
  void check() const;
  std::vector<double> beta_grid() const;
};

/// Reads generator and experiment settings from a JSON config document;
/// keys absent from the document keep their current value in `spec`.
void apply_config(ExperimentSpec& spec, const std::string& json_text);

// ---------------------------------------------------------------------------
// Welfare sweep

struct WelfareTrialRow {
  std::uint64_t trial = 0;
  double beta = 0.0;
  Mechanism mechanism = Mechanism::kHybrid;
  double pi_s = 0.0, pi_c = 0.0, pi = 0.0;
};

struct WelfarePoint {
  double beta = 0.0;
  Mechanism mechanism = Mechanism::kHybrid;
  MeanSe pi_s, pi_c, pi;
};

struct WelfareSweep {
  std::vector<WelfarePoint> points;
  std::vector<WelfareTrialRow> trials;
};

/// One truthful trial: generate, match, and score both sides.
WelfareTrialRow welfare_trial(const GenConfig& gen, double beta, Mechanism mechanism,
                              std::uint64_t seed, std::uint64_t trial);

WelfareSweep run_welfare_sweep(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Strategic-student count (beta = 1)

struct StrategyTrialRow {
  std::uint64_t trial = 0;
  int k = 0;
  double u_strategic = 0.0;  // mean over strategic students; NaN when k = 0
  double u_truthful = 0.0;   // mean over truthful students; NaN when k = n
  double pi_s = 0.0, pi_c_submitted = 0.0, pi_c_true = 0.0;
};

struct StrategyPoint {
  int k = 0;
  MeanSe u_strategic, u_truthful, pi_s, pi_c_submitted, pi_c_true;
};

struct StrategyStudy {
  std::vector<StrategyPoint> points;
  std::vector<StrategyTrialRow> trials;
};

/// The misreport a strategic student of the given score rank submits:
/// strategy_s with five colleges, otherwise favorite_last below the top quota.
PreferenceList strategic_report(std::span<const int> true_pref, int score_rank, int quota);

StrategyTrialRow strategy_trial(const GenConfig& gen, int k, StrategicSelection selection,
                                std::uint64_t seed, std::uint64_t trial);

StrategyStudy run_strategy_count(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Per-rank deviation study

struct PerRankTrialRow {
  std::uint64_t trial = 0;
  double beta = 0.0;
  int rank = 0;
  ReportMode mode = ReportMode::kTruthful;
  double utility = 0.0;
};

struct PerRankPoint {
  double beta = 0.0;
  int rank = 0;
  ReportMode mode = ReportMode::kTruthful;
  MeanSe utility;
};

struct PerRankStudy {
  std::vector<PerRankPoint> points;
  std::vector<PerRankTrialRow> trials;
};

/// Utility of the student holding `rank` when it alone reports per `mode`.
double per_rank_trial(const GenConfig& gen, double beta, int rank, ReportMode mode,
                      std::uint64_t seed, std::uint64_t trial);

PerRankStudy run_per_rank(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Anonymity probe: student 0 submits a fixed list, everyone else draws a
// uniform ordering (beta = 0). Reports how often it lands its i-th choice.

struct AnonymityProbe {
  std::vector<MeanSe> by_choice;  // entry i-1 for the i-th choice, last entry unmatched
};

AnonymityProbe run_anonymity_probe(const GenConfig& gen, const PreferenceList& probe_list,
                                   int trials, std::uint64_t seed,
                                   Execution execution = Execution::kParallel);

// ---------------------------------------------------------------------------
// CSV

void write_welfare_csv(std::ostream& os, const WelfareSweep& sweep);
void write_welfare_trials_csv(std::ostream& os, std::uint64_t seed, const WelfareSweep& sweep);
void write_strategy_csv(std::ostream& os, const StrategyStudy& study);
void write_strategy_trials_csv(std::ostream& os, std::uint64_t seed, const StrategyStudy& study);
void write_per_rank_csv(std::ostream& os, const PerRankStudy& study);
void write_per_rank_trials_csv(std::ostream& os, std::uint64_t seed, const PerRankStudy& study);

}  // namespace rmatch
