#include "rmatch/welfare.hpp"

#include <ostream>
#include <stdexcept>

namespace rmatch {

UtilityFunction UtilityFunction::linear(int max_rank, double top) {
  UtilityFunction u;
  for (int r = 1; r <= max_rank; ++r) u.table.push_back(top + 1.0 - r);
  return u;
}

double UtilityFunction::operator()(int rank) const {
  if (rank == 0) return unmatched;
  if (rank < 0 || rank > static_cast<int>(table.size())) {
    throw std::domain_error("no utility defined for rank " + std::to_string(rank));
  }
  return table[rank - 1];
}

bool UtilityFunction::is_valid() const {
  for (std::size_t r = 1; r < table.size(); ++r) {
    if (table[r] > table[r - 1]) return false;
  }
  return true;
}

namespace {

int rank_or_throw(std::span<const int> list, int partner) {
  auto r = rank_of(list, partner);
  if (!r) throw std::domain_error("matched partner is not ranked; utility undefined");
  return *r;
}

}  // namespace

double agent_utility(Side side, int agent, const Matching& matching,
                     std::span<const PreferenceList> prefs, const UtilityFunction& u,
                     std::span<const int> quotas) {
  if (side == Side::kStudents) {
    if (!matching.matched(agent)) return u(0);
    return u(rank_or_throw(prefs[agent], matching[agent]));
  }
  double total = 0.0;
  int held = 0;
  for (int s = 0; s < matching.num_students(); ++s) {
    if (matching[s] != agent) continue;
    total += u(rank_or_throw(prefs[agent], s));
    ++held;
  }
  const int seats = quotas.empty() ? 1 : quotas[agent];
  if (held < seats) total += (seats - held) * u(0);
  return total;
}

double aggregate(Side side, const Matching& matching, std::span<const PreferenceList> prefs,
                 const UtilityFunction& u, std::span<const int> quotas) {
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(prefs.size()); ++i) {
    total += agent_utility(side, i, matching, prefs, u, quotas);
  }
  return total;
}

Welfare social_welfare(const Matching& matching, std::span<const PreferenceList> student_prefs,
                       std::span<const PreferenceList> college_prefs,
                       const UtilityFunction& u_students, const UtilityFunction& u_colleges,
                       std::span<const int> quotas) {
  return {aggregate(Side::kStudents, matching, student_prefs, u_students),
          aggregate(Side::kColleges, matching, college_prefs, u_colleges, quotas)};
}

void write_welfare_row(std::ostream& os, long trial, double beta, const std::string& mechanism,
                       const Welfare& w) {
  os << trial << ',' << beta << ',' << mechanism << ',' << w.students << ',' << w.colleges << ','
     << w.total() << '\n';
}

}  // namespace rmatch
