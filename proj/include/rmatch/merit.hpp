#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rmatch/model.hpp"

namespace rmatch {

/// How a college treats a student who did not list it.
enum class UnlistedPolicy {
  kUnacceptable,  // never considered
  kAcceptable,    // appended after every listing student, bonus 0
};

/// Merits closer than this compare equal and fall through to the score tie-break.
inline constexpr double kMeritTolerance = 1e-9;

/// (1 - alpha) * score + alpha * bonus(rank).
double merit_score(double alpha, double score, const BonusFunction& bonus, int rank);

/// A college's evaluation of a man or woman in the marriage variant; same
/// arithmetic as merit_score with the initial rating in place of the exam score.
inline double marriage_merit(double alpha, double initial_rating, const BonusFunction& bonus,
                             int rank_in_partner_list) {
  return merit_score(alpha, initial_rating, bonus, rank_in_partner_list);
}

struct MeritEntry {
  int student = 0;
  double merit = 0.0;
  double score = 0.0;
  double lottery = 0.0;
  bool listed = true;
};

/// Lottery draw for one (college, student) pair, uniform on [0, 1).
double lottery_draw(std::uint64_t lottery_seed, const std::string& college_id,
                    const std::string& student_id);

/// Priority order used for every reciprocating list: listed before unlisted,
/// then merit (descending, within kMeritTolerance), score (descending) and
/// lottery (ascending).
bool merit_precedes(const MeritEntry& a, const MeritEntry& b);

/// Merit entries of every student the college considers, in priority order.
std::vector<MeritEntry> merit_order(const Instance& instance, int college,
                                    std::span<const PreferenceList> submitted, double alpha,
                                    std::uint64_t lottery_seed,
                                    UnlistedPolicy unlisted = UnlistedPolicy::kUnacceptable);

/// The college's merit-ordered list of students, using its own alpha.
PreferenceList reciprocating_preference(const Instance& instance, int college,
                                        std::span<const PreferenceList> submitted,
                                        std::uint64_t lottery_seed,
                                        UnlistedPolicy unlisted = UnlistedPolicy::kUnacceptable);

/// Same with alpha overridden (0 for raw-score order, 1 for Boston priority).
PreferenceList reciprocating_preference(const Instance& instance, int college,
                                        std::span<const PreferenceList> submitted,
                                        double alpha_override, std::uint64_t lottery_seed,
                                        UnlistedPolicy unlisted = UnlistedPolicy::kUnacceptable);

/// Default JUPAS bands: A 1-3, B 4-6, C 7-10, D 11-14, E 15-25.
struct BandTable {
  struct Band {
    std::string label;
    int first;
    int last;
  };
  std::vector<Band> bands;

  static BandTable jupas();
};

/// Choice-number bonus that is constant inside a band. `band_values` gives
/// one bonus per band and must be strictly decreasing.
BonusFunction band_bonus(const BandTable& table, std::span<const double> band_values);

}  // namespace rmatch
