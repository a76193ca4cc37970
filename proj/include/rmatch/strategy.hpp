#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "rmatch/matching.hpp"
#include "rmatch/model.hpp"

namespace rmatch {

// ---------------------------------------------------------------------------
// Student side

enum class StudentStrategyKind { kTruthful, kStrategyS, kCustom };

/// Score-rank-indexed misreport for five colleges with common true order
/// t1 > t2 > t3 > t4 > t5:
///   rank 1   t1 t2 t3 t4 t5 (truthful)
///   rank 2   t2 t3 t4 t5 t1
///   rank 3   t3 t2 t4 t5 t1
///   rank 4   t4 t2 t3 t5 t1
///   rank 5+  t5 t2 t3 t4 t1
/// Throws std::invalid_argument unless the list has exactly five colleges.
PreferenceList strategy_s(std::span<const int> true_pref, int score_rank);

/// t2 > t3 > ... > tm > t1: the favourite moved to the bottom.
PreferenceList favorite_last(std::span<const int> true_pref);

/// Swap the college at `from_rank` with the one at `to_rank` (1-based).
PreferenceList swap_ranks(std::span<const int> pref, int from_rank, int to_rank);

/// Score gap below which a student ranking the college second gains by
/// listing it first: (epsilon / (1 - epsilon)) * (h(1) - h(2)).
/// Throws std::domain_error unless 0 < epsilon < 1 and h covers ranks 1, 2.
double deviation_threshold(double epsilon, const BonusFunction& bonus);

/// 1-based score rank of every student (highest score first, ties by index).
std::vector<int> score_ranks(const Instance& instance);

// ---------------------------------------------------------------------------
// College side

/// A college report obtained by deleting students from its true list.
struct DroppingStrategy {
  std::vector<int> dropped;  // students removed, in base order
  PreferenceList report;     // remaining students, base order preserved
};

/// Every dropping strategy removing at most `max_drop` students, ordered by
/// number dropped and then lexicographically by position in `base`.
void for_each_dropping_strategy(std::span<const int> base, int max_drop,
                                const std::function<void(const DroppingStrategy&)>& visit);
std::vector<DroppingStrategy> dropping_strategies(std::span<const int> base, int max_drop);

enum class SetComparison { kEqual, kBetter, kWorse, kIncomparable };

/// Responsive comparison of two student sets under `true_pref`: A is weakly
/// better iff |A| >= |B| and, after sorting both by true rank, each of A's
/// first |B| members is ranked at least as well as B's member at that index.
SetComparison compare_sets(std::span<const int> true_pref, std::span<const int> a,
                           std::span<const int> b);

struct RejectionChainResult {
  bool returns_to_c = false;
  std::vector<int> final_assignment_of_c;
  int chain_start = kUnmatched;        // student peeled off in the last BEGIN pass
  int returning_student = kUnmatched;  // student who applied to c, if any
};

/// Rejection-chain simulation starting from the DA outcome under the given
/// lists: college c rejects `rejected` (a non-empty subset of its DA set) and
/// the displaced students are replayed one at a time, least preferred first.
/// Throws std::invalid_argument if `rejected` is empty or not held by c.
RejectionChainResult rejection_chains(std::span<const PreferenceList> student_prefs,
                                      std::span<const PreferenceList> college_prefs,
                                      std::span<const int> quotas, int c,
                                      std::span<const int> rejected);

struct AuditRow {
  int strategy_id = 0;
  int dropped_count = 0;
  bool improved = false;
};

struct AuditResult {
  std::vector<int> truthful_set;
  std::vector<int> best_set;
  int best_strategy_id = 0;  // 0 is the truthful report
  std::vector<AuditRow> rows;

  bool any_improvement() const { return best_strategy_id != 0; }
};

/// Reruns the matching phase under every dropping strategy of college c and
/// reports whether any yields a set c strictly prefers under its true list.
AuditResult college_manipulation_audit(const Instance& instance,
                                       std::span<const PreferenceList> submitted, int c,
                                       int max_drop, const MechanismConfig& config = {});

/// CSV `seed,college,strategy_id,dropped_count,improved`.
void write_audit_header(std::ostream& os);
void write_audit_rows(std::ostream& os, std::uint64_t seed, const std::string& college_id,
                      const AuditResult& result);

}  // namespace rmatch
