#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmatch/model.hpp"

namespace rmatch {

/// A student and a college that both prefer each other to what they hold.
struct BlockingPair {
  int student = 0;
  int college = 0;
  int student_gain = 0;  // current rank (unmatched = list length + 1) minus rank of college
  int college_gain = 0;  // worst held position (vacant seat = list length + 1) minus position of student

  bool operator==(const BlockingPair&) const = default;
};

/// Every blocking pair of a feasible matching with respect to the given lists.
/// A college prefers s to a seat if the seat is vacant and s is listed, or s
/// precedes one of its current students.
std::vector<BlockingPair> blocking_pairs(const Matching& matching,
                                         std::span<const PreferenceList> student_prefs,
                                         std::span<const PreferenceList> college_prefs,
                                         std::span<const int> quotas);

/// Nobody is matched to a partner that does not list them.
bool is_individually_rational(const Matching& matching,
                              std::span<const PreferenceList> student_prefs,
                              std::span<const PreferenceList> college_prefs);

/// Individually rational, feasible and free of blocking pairs.
bool is_r_stable(const Matching& matching, std::span<const PreferenceList> student_prefs,
                 std::span<const PreferenceList> college_prefs, std::span<const int> quotas);

inline constexpr std::uint64_t kMaxEnumeration = 10'000'000;

class EnumerationTooLarge : public std::length_error {
 public:
  EnumerationTooLarge(std::uint64_t candidates);
};

/// All stable matchings, sorted, by brute force over student -> college
/// assignments. Refuses when (colleges + 1)^students exceeds kMaxEnumeration.
std::vector<Matching> enumerate_stable(std::span<const PreferenceList> student_prefs,
                                       std::span<const PreferenceList> college_prefs,
                                       std::span<const int> quotas);

/// True iff every student ranks its candidate partner at least as well as in
/// every member of the stable set. Throws std::invalid_argument if the
/// candidate is not in the set.
bool is_student_optimal(const Matching& candidate, std::span<const Matching> stable_set,
                        std::span<const PreferenceList> student_prefs);

/// CSV `student,college,student_gain,college_gain` with agent ids.
void write_blocking_pairs(std::ostream& os, const Instance& instance,
                          std::span<const BlockingPair> pairs);

}  // namespace rmatch
