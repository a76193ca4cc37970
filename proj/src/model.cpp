#include "rmatch/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rmatch {

BonusFunction BonusFunction::banded(std::vector<BandInterval> bands) {
  BonusFunction h;
  for (const auto& band : bands) {
    for (int r = band.first; r <= band.last; ++r) h.table_.push_back(band.value);
  }
  h.bands_ = std::move(bands);
  return h;
}

double BonusFunction::operator()(int rank) const {
  if (rank < 1 || rank > size()) {
    throw std::domain_error("rank " + std::to_string(rank) + " outside bonus domain [1," +
                            std::to_string(size()) + "]");
  }
  return table_[rank - 1];
}

bool BonusFunction::is_valid() const {
  if (!is_banded()) {
    for (std::size_t r = 1; r < table_.size(); ++r) {
      if (!(table_[r - 1] > table_[r])) return false;
    }
    return true;
  }
  int expected_first = 1;
  for (std::size_t b = 0; b < bands_.size(); ++b) {
    if (bands_[b].first != expected_first || bands_[b].last < bands_[b].first) return false;
    if (b > 0 && !(bands_[b - 1].value > bands_[b].value)) return false;
    expected_first = bands_[b].last + 1;
  }
  return static_cast<int>(table_.size()) == expected_first - 1;
}

BonusFunction linear_bonus(int n) {
  std::vector<double> table(n);
  for (int r = 1; r <= n; ++r) table[r - 1] = 110.0 - 10.0 * r;
  return BonusFunction(std::move(table));
}

std::vector<int> Instance::quotas() const {
  std::vector<int> q;
  q.reserve(colleges.size());
  for (const auto& c : colleges) q.push_back(c.quota);
  return q;
}

std::optional<int> Instance::find_student(std::string_view id) const {
  for (int i = 0; i < num_students(); ++i) {
    if (students[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<int> Instance::find_college(std::string_view id) const {
  for (int i = 0; i < num_colleges(); ++i) {
    if (colleges[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> Matching::members(int num_colleges) const {
  std::vector<std::vector<int>> held(num_colleges);
  for (int s = 0; s < num_students(); ++s) {
    if (college_of[s] != kUnmatched) held[college_of[s]].push_back(s);
  }
  return held;
}

bool Matching::is_feasible(std::span<const int> quotas) const {
  std::vector<int> load(quotas.size(), 0);
  for (int c : college_of) {
    if (c == kUnmatched) continue;
    if (c < 0 || c >= static_cast<int>(quotas.size())) return false;
    if (++load[c] > quotas[c]) return false;
  }
  return true;
}

std::optional<int> rank_of(std::span<const int> list, int target) {
  auto it = std::find(list.begin(), list.end(), target);
  if (it == list.end()) return std::nullopt;
  return static_cast<int>(it - list.begin()) + 1;
}

namespace {

void check_pref_lists(const Instance& instance, std::span<const PreferenceList> prefs,
                      std::vector<Violation>& out) {
  if (static_cast<int>(prefs.size()) != instance.num_students()) {
    out.push_back({"prefs", "expected " + std::to_string(instance.num_students()) +
                                " preference lists, got " + std::to_string(prefs.size())});
  }
  const int n = std::min<int>(prefs.size(), instance.num_students());
  for (int s = 0; s < n; ++s) {
    const auto& sid = instance.students[s].id;
    std::set<int> seen;
    for (int c : prefs[s]) {
      if (c < 0 || c >= instance.num_colleges()) {
        out.push_back({sid, "preference list references unknown college"});
      } else if (!seen.insert(c).second) {
        out.push_back({sid, "duplicate college " + instance.colleges[c].id + " in preference list"});
      }
    }
    for (int rank = 1; rank <= static_cast<int>(prefs[s].size()); ++rank) {
      int c = prefs[s][rank - 1];
      if (c < 0 || c >= instance.num_colleges()) continue;
      const auto& college = instance.colleges[c];
      if (college.alpha > 0.0 && rank > college.bonus.size()) {
        out.push_back({college.id, "bonus domain too short for rank " + std::to_string(rank) +
                                       " listed by " + sid});
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate(const Instance& instance) {
  std::vector<Violation> out;
  if (!(instance.f_max > 0.0)) out.push_back({"f_max", "f_max must be positive"});

  std::set<std::string> ids;
  for (const auto& s : instance.students) {
    if (!ids.insert(s.id).second) out.push_back({s.id, "duplicate student id"});
    if (!(s.score >= 0.0 && s.score <= instance.f_max)) {
      out.push_back({s.id, "score out of range"});
    }
  }
  ids.clear();
  for (const auto& c : instance.colleges) {
    if (!ids.insert(c.id).second) out.push_back({c.id, "duplicate college id"});
    if (c.quota < 1) out.push_back({c.id, "quota must be at least 1"});
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) out.push_back({c.id, "alpha out of range"});
    if (!c.bonus.is_valid()) out.push_back({c.id, "bonus not strictly decreasing"});
  }
  check_pref_lists(instance, instance.student_prefs, out);
  return out;
}

std::vector<Violation> validate_prefs(const Instance& instance,
                                      std::span<const PreferenceList> prefs) {
  std::vector<Violation> out;
  check_pref_lists(instance, prefs, out);
  return out;
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "invalid instance:";
  for (const auto& v : violations) os << " [" << v.id << ": " << v.message << "]";
  return os.str();
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

}  // namespace rmatch
