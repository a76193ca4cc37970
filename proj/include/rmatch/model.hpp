#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmatch {

/// Students and colleges are addressed by their position in the owning
/// Instance. Preference lists hold those positions, most preferred first.
using PreferenceList = std::vector<int>;

inline constexpr int kUnmatched = -1;

/// Strictly decreasing rank -> bonus table; entry r-1 holds h(r).
///
/// A banded table (built by band_bonus) is constant inside each band, so the
/// strict-decrease requirement is relaxed to hold across band boundaries only.
struct BandInterval {
  std::string label;
  int first = 1;
  int last = 1;
  double value = 0.0;

  bool operator==(const BandInterval&) const = default;
};

class BonusFunction {
 public:
  BonusFunction() = default;
  explicit BonusFunction(std::vector<double> table) : table_(std::move(table)) {}

  static BonusFunction banded(std::vector<BandInterval> bands);

  /// h(r) for 1 <= r <= size(); throws std::domain_error otherwise.
  double operator()(int rank) const;

  int size() const { return static_cast<int>(table_.size()); }
  bool empty() const { return table_.empty(); }
  bool is_banded() const { return !bands_.empty(); }
  const std::vector<double>& table() const { return table_; }
  const std::vector<BandInterval>& bands() const { return bands_; }

  /// Strict decrease per rank, or across bands for a banded table.
  bool is_valid() const;

  bool operator==(const BonusFunction&) const = default;

 private:
  std::vector<double> table_;
  std::vector<BandInterval> bands_;
};

/// h(r) = 110 - 10r for r = 1..n.
BonusFunction linear_bonus(int n);

struct Student {
  std::string id;
  double score = 0.0;

  bool operator==(const Student&) const = default;
};

struct College {
  std::string id;
  int quota = 1;
  double alpha = 0.0;
  BonusFunction bonus;

  bool operator==(const College&) const = default;
};

struct Instance {
  double f_max = 100.0;
  std::vector<Student> students;
  std::vector<College> colleges;
  std::vector<PreferenceList> student_prefs;

  int num_students() const { return static_cast<int>(students.size()); }
  int num_colleges() const { return static_cast<int>(colleges.size()); }
  std::vector<int> quotas() const;

  std::optional<int> find_student(std::string_view id) const;
  std::optional<int> find_college(std::string_view id) const;

  bool operator==(const Instance&) const = default;
};

/// Assignment of each student to a college index or kUnmatched.
struct Matching {
  std::vector<int> college_of;

  Matching() = default;
  explicit Matching(int num_students) : college_of(num_students, kUnmatched) {}
  explicit Matching(std::vector<int> assignment) : college_of(std::move(assignment)) {}

  int num_students() const { return static_cast<int>(college_of.size()); }
  int operator[](int student) const { return college_of[student]; }
  bool matched(int student) const { return college_of[student] != kUnmatched; }

  /// Students held by each college, in ascending student order.
  std::vector<std::vector<int>> members(int num_colleges) const;

  /// Quota respected; every entry in range.
  bool is_feasible(std::span<const int> quotas) const;

  auto operator<=>(const Matching&) const = default;
};

/// 1-based position of target in list, or nullopt when unlisted.
std::optional<int> rank_of(std::span<const int> list, int target);

struct Violation {
  std::string id;
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Every invariant violation in the instance; empty means well formed.
std::vector<Violation> validate(const Instance& instance);

/// Same checks for a submitted preference profile against an instance.
std::vector<Violation> validate_prefs(const Instance& instance,
                                      std::span<const PreferenceList> prefs);

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace rmatch
