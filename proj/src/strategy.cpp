#include "rmatch/strategy.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace rmatch {

PreferenceList strategy_s(std::span<const int> true_pref, int score_rank) {
  if (true_pref.size() != 5) {
    throw std::invalid_argument("strategy_s needs exactly 5 colleges, got " +
                                std::to_string(true_pref.size()));
  }
  if (score_rank < 1) throw std::invalid_argument("strategy_s: score rank must be >= 1");
  // Positions into the true list, 0-based.
  static constexpr int kTable[5][5] = {
      {0, 1, 2, 3, 4},
      {1, 2, 3, 4, 0},
      {2, 1, 3, 4, 0},
      {3, 1, 2, 4, 0},
      {4, 1, 2, 3, 0},
  };
  const auto& row = kTable[std::min(score_rank, 5) - 1];
  PreferenceList out(5);
  for (int i = 0; i < 5; ++i) out[i] = true_pref[row[i]];
  return out;
}

PreferenceList favorite_last(std::span<const int> true_pref) {
  PreferenceList out(true_pref.begin(), true_pref.end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + 1, out.end());
  return out;
}

PreferenceList swap_ranks(std::span<const int> pref, int from_rank, int to_rank) {
  PreferenceList out(pref.begin(), pref.end());
  std::swap(out.at(from_rank - 1), out.at(to_rank - 1));
  return out;
}

double deviation_threshold(double epsilon, const BonusFunction& bonus) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("deviation_threshold: epsilon must lie in (0, 1)");
  }
  return epsilon / (1.0 - epsilon) * (bonus(1) - bonus(2));
}

std::vector<int> score_ranks(const Instance& instance) {
  const int n = instance.num_students();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.students[a].score > instance.students[b].score;
  });
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[order[i]] = i + 1;
  return rank;
}

void for_each_dropping_strategy(std::span<const int> base, int max_drop,
                                const std::function<void(const DroppingStrategy&)>& visit) {
  const int n = static_cast<int>(base.size());
  max_drop = std::clamp(max_drop, 0, n);
  std::vector<int> idx;
  for (int k = 0; k <= max_drop; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      DroppingStrategy d;
      std::vector<bool> drop(n, false);
      for (int i : idx) {
        drop[i] = true;
        d.dropped.push_back(base[i]);
      }
      for (int i = 0; i < n; ++i) {
        if (!drop[i]) d.report.push_back(base[i]);
      }
      visit(d);

      // Next k-combination of {0..n-1} in lexicographic order.
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

std::vector<DroppingStrategy> dropping_strategies(std::span<const int> base, int max_drop) {
  std::vector<DroppingStrategy> out;
  for_each_dropping_strategy(base, max_drop,
                             [&](const DroppingStrategy& d) { out.push_back(d); });
  return out;
}

namespace {

std::vector<int> sorted_ranks(std::span<const int> true_pref, std::span<const int> set) {
  std::vector<int> ranks;
  for (int s : set) {
    auto r = rank_of(true_pref, s);
    ranks.push_back(r ? *r : static_cast<int>(true_pref.size()) + 1);
  }
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

bool weakly_better(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() < b.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

}  // namespace

SetComparison compare_sets(std::span<const int> true_pref, std::span<const int> a,
                           std::span<const int> b) {
  const auto ra = sorted_ranks(true_pref, a);
  const auto rb = sorted_ranks(true_pref, b);
  const bool ab = weakly_better(ra, rb);
  const bool ba = weakly_better(rb, ra);
  if (ab && ba) return SetComparison::kEqual;
  if (ab) return SetComparison::kBetter;
  if (ba) return SetComparison::kWorse;
  return SetComparison::kIncomparable;
}

RejectionChainResult rejection_chains(std::span<const PreferenceList> student_prefs,
                                      std::span<const PreferenceList> college_prefs,
                                      std::span<const int> quotas, int c,
                                      std::span<const int> rejected) {
  const int n = static_cast<int>(student_prefs.size());
  const int m = static_cast<int>(college_prefs.size());
  const Matching mu = deferred_acceptance(student_prefs, college_prefs, quotas);
  auto held = mu.members(m);

  if (rejected.empty()) throw std::invalid_argument("rejection_chains: rejected set is empty");
  for (int s : rejected) {
    if (s < 0 || s >= n || mu[s] != c) {
      throw std::invalid_argument("rejection_chains: rejected set is not a subset of mu(c)");
    }
  }

  auto position = [&](int college, int s) {
    auto r = rank_of(college_prefs[college], s);
    return r ? *r : static_cast<int>(college_prefs[college].size()) + 1;
  };

  // Under DA every student has applied down to its match; unmatched students
  // have exhausted their lists.
  std::vector<std::size_t> next(n);
  for (int s = 0; s < n; ++s) {
    next[s] = mu.matched(s) ? static_cast<std::size_t>(*rank_of(student_prefs[s], mu[s]))
                            : student_prefs[s].size();
  }

  std::vector<int> pending(rejected.begin(), rejected.end());
  auto& at_c = held[c];
  std::erase_if(at_c, [&](int s) {
    return std::find(pending.begin(), pending.end(), s) != pending.end();
  });

  RejectionChainResult result;
  while (!pending.empty()) {
    auto least = std::max_element(pending.begin(), pending.end(), [&](int a, int b) {
      return position(c, a) < position(c, b);
    });
    int s = *least;
    pending.erase(least);
    result.chain_start = s;

    // Application/rejection cascade carried by the currently displaced student.
    while (next[s] < student_prefs[s].size()) {
      const int target = student_prefs[s][next[s]++];
      if (target == c) {
        result.returns_to_c = true;
        result.returning_student = s;
        std::sort(at_c.begin(), at_c.end());
        result.final_assignment_of_c = at_c;
        return result;
      }
      if (!rank_of(college_prefs[target], s)) continue;
      auto& slot = held[target];
      if (static_cast<int>(slot.size()) < quotas[target]) {
        slot.push_back(s);
        break;
      }
      auto worst = std::max_element(slot.begin(), slot.end(), [&](int a, int b) {
        return position(target, a) < position(target, b);
      });
      if (position(target, *worst) < position(target, s)) continue;
      std::swap(*worst, s);
    }
  }
  std::sort(at_c.begin(), at_c.end());
  result.final_assignment_of_c = at_c;
  return result;
}

AuditResult college_manipulation_audit(const Instance& instance,
                                       std::span<const PreferenceList> submitted, int c,
                                       int max_drop, const MechanismConfig& config) {
  auto college_prefs = college_preferences(instance, submitted, config);
  const auto quotas = instance.quotas();
  const PreferenceList true_list = college_prefs.at(c);

  auto run = [&]() {
    const Matching mu = config.mode == Mode::kPureBM
                            ? boston(submitted, college_prefs, quotas)
                            : deferred_acceptance(submitted, college_prefs, quotas);
    return mu.members(instance.num_colleges())[c];
  };

  AuditResult result;
  result.truthful_set = run();
  result.best_set = result.truthful_set;

  int id = 0;
  for_each_dropping_strategy(true_list, max_drop, [&](const DroppingStrategy& d) {
    const int strategy_id = id++;
    if (d.dropped.empty()) return;
    college_prefs[c] = d.report;
    const auto outcome = run();
    const bool improved =
        compare_sets(true_list, outcome, result.truthful_set) == SetComparison::kBetter;
    result.rows.push_back({strategy_id, static_cast<int>(d.dropped.size()), improved});
    if (improved && compare_sets(true_list, outcome, result.best_set) == SetComparison::kBetter) {
      result.best_set = outcome;
      result.best_strategy_id = strategy_id;
    }
  });
  return result;
}

void write_audit_header(std::ostream& os) { os << "seed,college,strategy_id,dropped_count,improved\n"; }

void write_audit_rows(std::ostream& os, std::uint64_t seed, const std::string& college_id,
                      const AuditResult& result) {
  for (const auto& row : result.rows) {
    os << seed << ',' << college_id << ',' << row.strategy_id << ',' << row.dropped_count << ','
       << (row.improved ? "true" : "false") << '\n';
  }
}

}  // namespace rmatch
