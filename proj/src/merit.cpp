#include "rmatch/merit.hpp"

#include <algorithm>
#include <cmath>

#include "rmatch/rng.hpp"

namespace rmatch {

double merit_score(double alpha, double score, const BonusFunction& bonus, int rank) {
  return (1.0 - alpha) * score + alpha * bonus(rank);
}

double lottery_draw(std::uint64_t lottery_seed, const std::string& college_id,
                    const std::string& student_id) {
  return Substream(lottery_seed, hash_id(college_id), Purpose::kLottery, hash_id(student_id))
      .uniform01();
}

namespace {

// Merits are compared on a grid of kMeritTolerance so that the tie test stays
// a strict weak ordering (a pairwise |a-b| < tol test is not transitive).
double merit_key(double merit) { return std::round(merit / kMeritTolerance); }

}  // namespace

bool merit_precedes(const MeritEntry& a, const MeritEntry& b) {
  if (a.listed != b.listed) return a.listed;
  const double ka = merit_key(a.merit), kb = merit_key(b.merit);
  if (ka != kb) return ka > kb;
  if (a.score != b.score) return a.score > b.score;
  if (a.lottery != b.lottery) return a.lottery < b.lottery;
  return a.student < b.student;
}

std::vector<MeritEntry> merit_order(const Instance& instance, int college,
                                    std::span<const PreferenceList> submitted, double alpha,
                                    std::uint64_t lottery_seed, UnlistedPolicy unlisted) {
  const College& c = instance.colleges.at(college);
  std::vector<MeritEntry> entries;
  entries.reserve(instance.students.size());
  for (int s = 0; s < instance.num_students(); ++s) {
    const Student& student = instance.students[s];
    MeritEntry e{s, 0.0, student.score, lottery_draw(lottery_seed, c.id, student.id), true};
    if (auto rank = rank_of(submitted[s], college)) {
      e.merit = alpha == 0.0 ? student.score : merit_score(alpha, student.score, c.bonus, *rank);
    } else if (unlisted == UnlistedPolicy::kAcceptable) {
      e.merit = (1.0 - alpha) * student.score;
      e.listed = false;
    } else {
      continue;
    }
    entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(), merit_precedes);
  return entries;
}

PreferenceList reciprocating_preference(const Instance& instance, int college,
                                        std::span<const PreferenceList> submitted,
                                        std::uint64_t lottery_seed, UnlistedPolicy unlisted) {
  return reciprocating_preference(instance, college, submitted,
                                  instance.colleges.at(college).alpha, lottery_seed, unlisted);
}

PreferenceList reciprocating_preference(const Instance& instance, int college,
                                        std::span<const PreferenceList> submitted,
                                        double alpha_override, std::uint64_t lottery_seed,
                                        UnlistedPolicy unlisted) {
  auto entries = merit_order(instance, college, submitted, alpha_override, lottery_seed, unlisted);
  PreferenceList list;
  list.reserve(entries.size());
  for (const auto& e : entries) list.push_back(e.student);
  return list;
}

BandTable BandTable::jupas() {
  return BandTable{{{"A", 1, 3}, {"B", 4, 6}, {"C", 7, 10}, {"D", 11, 14}, {"E", 15, 25}}};
}

BonusFunction band_bonus(const BandTable& table, std::span<const double> band_values) {
  if (band_values.size() != table.bands.size()) {
    throw std::invalid_argument("band_bonus: one value per band required");
  }
  std::vector<BandInterval> bands;
  for (std::size_t b = 0; b < table.bands.size(); ++b) {
    if (b > 0 && !(band_values[b - 1] > band_values[b])) {
      throw std::invalid_argument("band_bonus: band values must be strictly decreasing");
    }
    bands.push_back({table.bands[b].label, table.bands[b].first, table.bands[b].last,
                     band_values[b]});
  }
  auto h = BonusFunction::banded(std::move(bands));
  if (!h.is_valid()) throw std::invalid_argument("band_bonus: bands must be contiguous from 1");
  return h;
}

}  // namespace rmatch
