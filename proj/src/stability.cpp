#include "rmatch/stability.hpp"

#include <algorithm>
#include <ostream>

namespace rmatch {

namespace {

int rank_or_worst(std::span<const int> list, int target) {
  if (target == kUnmatched) return static_cast<int>(list.size()) + 1;
  auto r = rank_of(list, target);
  return r ? *r : static_cast<int>(list.size()) + 1;
}

}  // namespace

std::vector<BlockingPair> blocking_pairs(const Matching& matching,
                                         std::span<const PreferenceList> student_prefs,
                                         std::span<const PreferenceList> college_prefs,
                                         std::span<const int> quotas) {
  const int m = static_cast<int>(college_prefs.size());
  const auto held = matching.members(m);

  // Worst position each college currently holds; a vacancy counts as len + 1.
  std::vector<int> threshold(m);
  for (int c = 0; c < m; ++c) {
    const int vacant = static_cast<int>(college_prefs[c].size()) + 1;
    if (static_cast<int>(held[c].size()) < quotas[c]) {
      threshold[c] = vacant;
      continue;
    }
    int worst = 0;
    for (int s : held[c]) worst = std::max(worst, rank_or_worst(college_prefs[c], s));
    threshold[c] = worst;
  }

  std::vector<BlockingPair> out;
  for (int s = 0; s < matching.num_students(); ++s) {
    const auto& list = student_prefs[s];
    const int current = rank_or_worst(list, matching[s]);
    for (int r = 1; r < current && r <= static_cast<int>(list.size()); ++r) {
      const int c = list[r - 1];
      auto pos = rank_of(college_prefs[c], s);
      if (!pos || *pos >= threshold[c]) continue;
      out.push_back({s, c, current - r, threshold[c] - *pos});
    }
  }
  return out;
}

bool is_individually_rational(const Matching& matching,
                              std::span<const PreferenceList> student_prefs,
                              std::span<const PreferenceList> college_prefs) {
  for (int s = 0; s < matching.num_students(); ++s) {
    if (!matching.matched(s)) continue;
    if (!rank_of(student_prefs[s], matching[s])) return false;
    if (!rank_of(college_prefs[matching[s]], s)) return false;
  }
  return true;
}

bool is_r_stable(const Matching& matching, std::span<const PreferenceList> student_prefs,
                 std::span<const PreferenceList> college_prefs, std::span<const int> quotas) {
  return matching.is_feasible(quotas) &&
         is_individually_rational(matching, student_prefs, college_prefs) &&
         blocking_pairs(matching, student_prefs, college_prefs, quotas).empty();
}

EnumerationTooLarge::EnumerationTooLarge(std::uint64_t candidates)
    : std::length_error("stable-set enumeration refused: " + std::to_string(candidates) +
                        " candidate assignments exceed the bound of " +
                        std::to_string(kMaxEnumeration)) {}

std::vector<Matching> enumerate_stable(std::span<const PreferenceList> student_prefs,
                                       std::span<const PreferenceList> college_prefs,
                                       std::span<const int> quotas) {
  const int n = static_cast<int>(student_prefs.size());
  const int m = static_cast<int>(college_prefs.size());

  std::uint64_t candidates = 1;
  for (int i = 0; i < n; ++i) {
    candidates *= static_cast<std::uint64_t>(m + 1);
    if (candidates > kMaxEnumeration) throw EnumerationTooLarge(candidates);
  }

  // Mixed-radix digits per student: UNMATCHED or a mutually acceptable college.
  // Other assignments are individually irrational and never stable.
  std::vector<std::vector<int>> options(n);
  for (int s = 0; s < n; ++s) {
    options[s].push_back(kUnmatched);
    for (int c : student_prefs[s]) {
      if (rank_of(college_prefs[c], s)) options[s].push_back(c);
    }
  }

  std::vector<Matching> stable;
  Matching current(n);
  std::vector<int> load(m, 0);

  auto visit = [&](auto&& self, int s) -> void {
    if (s == n) {
      if (blocking_pairs(current, student_prefs, college_prefs, quotas).empty()) {
        stable.push_back(current);
      }
      return;
    }
    for (int c : options[s]) {
      if (c != kUnmatched && load[c] == quotas[c]) continue;
      if (c != kUnmatched) ++load[c];
      current.college_of[s] = c;
      self(self, s + 1);
      if (c != kUnmatched) --load[c];
    }
    current.college_of[s] = kUnmatched;
  };
  visit(visit, 0);

  std::sort(stable.begin(), stable.end());
  return stable;
}

bool is_student_optimal(const Matching& candidate, std::span<const Matching> stable_set,
                        std::span<const PreferenceList> student_prefs) {
  if (std::find(stable_set.begin(), stable_set.end(), candidate) == stable_set.end()) {
    throw std::invalid_argument("is_student_optimal: candidate is not in the stable set");
  }
  for (const auto& other : stable_set) {
    for (int s = 0; s < candidate.num_students(); ++s) {
      if (rank_or_worst(student_prefs[s], candidate[s]) >
          rank_or_worst(student_prefs[s], other[s])) {
        return false;
      }
    }
  }
  return true;
}

void write_blocking_pairs(std::ostream& os, const Instance& instance,
                          std::span<const BlockingPair> pairs) {
  os << "student,college,student_gain,college_gain\n";
  for (const auto& p : pairs) {
    os << instance.students[p.student].id << ',' << instance.colleges[p.college].id << ','
       << p.student_gain << ',' << p.college_gain << '\n';
  }
}

}  // namespace rmatch
