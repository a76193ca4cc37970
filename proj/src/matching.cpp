#include "rmatch/matching.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace rmatch {

namespace {

constexpr int kNotListed = -1;

// position[c][s]: 0-based index of s in c's list, kNotListed if absent.
std::vector<std::vector<int>> positions(std::span<const PreferenceList> college_prefs,
                                        int num_students) {
  std::vector<std::vector<int>> pos(college_prefs.size(),
                                    std::vector<int>(num_students, kNotListed));
  for (std::size_t c = 0; c < college_prefs.size(); ++c) {
    for (std::size_t i = 0; i < college_prefs[c].size(); ++i) {
      pos[c][college_prefs[c][i]] = static_cast<int>(i);
    }
  }
  return pos;
}

}  // namespace

Matching deferred_acceptance(std::span<const PreferenceList> student_prefs,
                             std::span<const PreferenceList> college_prefs,
                             std::span<const int> quotas, std::span<const int> proposal_order) {
  const int n = static_cast<int>(student_prefs.size());
  const auto pos = positions(college_prefs, n);
  std::vector<std::vector<int>> held(college_prefs.size());
  std::vector<std::size_t> next(n, 0);
  Matching result(n);

  std::deque<int> free;
  if (proposal_order.empty()) {
    for (int s = 0; s < n; ++s) free.push_back(s);
  } else {
    free.assign(proposal_order.begin(), proposal_order.end());
  }

  while (!free.empty()) {
    int s = free.front();
    free.pop_front();
    while (next[s] < student_prefs[s].size()) {
      const int c = student_prefs[s][next[s]++];
      if (pos[c][s] == kNotListed) continue;
      auto& slot = held[c];
      slot.push_back(s);
      result.college_of[s] = c;
      if (static_cast<int>(slot.size()) <= quotas[c]) break;
      auto worst = std::max_element(slot.begin(), slot.end(),
                                    [&](int a, int b) { return pos[c][a] < pos[c][b]; });
      const int rejected = *worst;
      slot.erase(worst);
      result.college_of[rejected] = kUnmatched;
      if (rejected == s) continue;
      free.push_front(rejected);
      break;
    }
  }
  return result;
}

Matching boston(std::span<const PreferenceList> student_prefs,
                std::span<const PreferenceList> college_priority, std::span<const int> quotas) {
  const int n = static_cast<int>(student_prefs.size());
  const int m = static_cast<int>(college_priority.size());
  const auto pos = positions(college_priority, n);
  std::vector<int> seats(quotas.begin(), quotas.end());
  Matching result(n);

  std::size_t rounds = 0;
  for (const auto& p : student_prefs) rounds = std::max(rounds, p.size());

  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<std::vector<int>> applicants(m);
    for (int s = 0; s < n; ++s) {
      if (result.matched(s) || r >= student_prefs[s].size()) continue;
      const int c = student_prefs[s][r];
      if (seats[c] > 0 && pos[c][s] != kNotListed) applicants[c].push_back(s);
    }
    for (int c = 0; c < m; ++c) {
      auto& a = applicants[c];
      std::sort(a.begin(), a.end(), [&](int x, int y) { return pos[c][x] < pos[c][y]; });
      for (int s : a) {
        if (seats[c] == 0) break;
        result.college_of[s] = c;
        --seats[c];
      }
    }
  }
  return result;
}

std::vector<PreferenceList> college_preferences(const Instance& instance,
                                                std::span<const PreferenceList> submitted,
                                                const MechanismConfig& config) {
  std::vector<PreferenceList> prefs;
  prefs.reserve(instance.colleges.size());
  for (int c = 0; c < instance.num_colleges(); ++c) {
    if (config.mode == Mode::kGeneralized) {
      prefs.push_back(reciprocating_preference(instance, c, submitted, config.lottery_seed,
                                               config.unlisted));
    } else {
      prefs.push_back(reciprocating_preference(instance, c, submitted, 0.0, config.lottery_seed,
                                               config.unlisted));
    }
  }
  return prefs;
}

Matching generalized_match(const Instance& instance, std::span<const PreferenceList> submitted,
                           const MechanismConfig& config) {
  auto violations = validate(instance);
  auto more = validate_prefs(instance, submitted);
  violations.insert(violations.end(), more.begin(), more.end());
  if (!violations.empty()) throw InvalidInstance(std::move(violations));
  return generalized_match_unchecked(instance, submitted, config);
}

Matching generalized_match_unchecked(const Instance& instance,
                                     std::span<const PreferenceList> submitted,
                                     const MechanismConfig& config) {
  const auto college_prefs = college_preferences(instance, submitted, config);
  const auto quotas = instance.quotas();
  if (config.mode == Mode::kPureBM) return boston(submitted, college_prefs, quotas);
  return deferred_acceptance(submitted, college_prefs, quotas);
}

std::vector<PreferenceList> marriage_reciprocating(const MarriageSide& side,
                                                   const MarriageSide& other) {
  std::vector<PreferenceList> out(side.size());
  for (int i = 0; i < side.size(); ++i) {
    struct Entry {
      int who;
      double merit;
      double rating;
    };
    std::vector<Entry> entries;
    for (int j : side.prefs[i]) {
      const double rating = side.ratings[i][j];
      double merit = rating;
      if (side.alpha[i] != 0.0) {
        auto r = rank_of(other.prefs[j], i);
        const double bonus = r ? side.bonus[i](*r) : 0.0;
        merit = (1.0 - side.alpha[i]) * rating + side.alpha[i] * bonus;
      }
      entries.push_back({j, merit, rating});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      MeritEntry ea{a.who, a.merit, a.rating, 0.0, true};
      MeritEntry eb{b.who, b.merit, b.rating, 0.0, true};
      return merit_precedes(ea, eb);
    });
    for (const auto& e : entries) out[i].push_back(e.who);
  }
  return out;
}

MarriageResult marriage_match(const MarriageSide& men, const MarriageSide& women,
                              Proposer proposer) {
  const auto men_recip = marriage_reciprocating(men, women);
  const auto women_recip = marriage_reciprocating(women, men);
  const bool men_propose = proposer == Proposer::kMen;
  const auto& proposing = men_propose ? men_recip : women_recip;
  const auto& receiving = men_propose ? women_recip : men_recip;

  // A receiver only accepts proposers who are mutually acceptable.
  std::vector<PreferenceList> receiving_acceptable(receiving.size());
  for (std::size_t r = 0; r < receiving.size(); ++r) {
    for (int p : receiving[r]) {
      if (rank_of(proposing[p], static_cast<int>(r))) receiving_acceptable[r].push_back(p);
    }
  }
  const std::vector<int> ones(receiving.size(), 1);
  const Matching m = deferred_acceptance(proposing, receiving_acceptable, ones);

  MarriageResult out{std::vector<int>(men.size(), kUnmatched),
                     std::vector<int>(women.size(), kUnmatched)};
  for (int p = 0; p < m.num_students(); ++p) {
    if (!m.matched(p)) continue;
    if (men_propose) {
      out.wife_of[p] = m[p];
      out.husband_of[m[p]] = p;
    } else {
      out.husband_of[p] = m[p];
      out.wife_of[m[p]] = p;
    }
  }
  return out;
}

}  // namespace rmatch
