#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rmatch/model.hpp"

namespace rmatch {

/// Rank -> utility table (entry r-1 holds U(r)) plus U(0) for no partner.
struct UtilityFunction {
  std::vector<double> table;
  double unmatched = 0.0;

  /// U(r) = top + 1 - r for r = 1..max_rank, U(0) = 0. With top = 10 this is
  /// the 11 - r table used in the welfare experiments.
  static UtilityFunction linear(int max_rank, double top = 10.0);

  double operator()(int rank) const;
  bool is_valid() const;  // non-increasing in rank
};

enum class Side { kStudents, kColleges };

/// Utility of one agent. For a student, `prefs` is its college list; for a
/// college, its (reciprocating) student list and each empty seat adds U(0).
/// Throws std::domain_error if a partner is absent from `prefs`.
double agent_utility(Side side, int agent, const Matching& matching,
                     std::span<const PreferenceList> prefs, const UtilityFunction& u,
                     std::span<const int> quotas = {});

/// Sum of agent_utility over one side; `prefs` is indexed by agents of that side.
double aggregate(Side side, const Matching& matching, std::span<const PreferenceList> prefs,
                 const UtilityFunction& u, std::span<const int> quotas = {});

struct Welfare {
  double students = 0.0;  // pi_S
  double colleges = 0.0;  // pi_C
  double total() const { return students + colleges; }  // Pi
};

Welfare social_welfare(const Matching& matching, std::span<const PreferenceList> student_prefs,
                       std::span<const PreferenceList> college_prefs,
                       const UtilityFunction& u_students, const UtilityFunction& u_colleges,
                       std::span<const int> quotas = {});

/// Strict "more efficient than" relation on outcomes.
inline bool more_efficient(const Welfare& a, const Welfare& b) { return a.total() > b.total(); }

/// Per-trial CSV row `trial,beta,mechanism,pi_S,pi_C,Pi`.
void write_welfare_row(std::ostream& os, long trial, double beta, const std::string& mechanism,
                       const Welfare& w);

}  // namespace rmatch
