#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rmatch/merit.hpp"
#include "rmatch/model.hpp"

namespace rmatch {

enum class Mode {
  kGeneralized,  // each college uses its own alpha
  kPureDA,       // alpha forced to 0: raw-score priorities
  kPureBM,       // direct Boston rounds with raw-score priority inside a round
};

struct MechanismConfig {
  Mode mode = Mode::kGeneralized;
  std::uint64_t lottery_seed = 0;
  UnlistedPolicy unlisted = UnlistedPolicy::kUnacceptable;
};

/// Student-proposing deferred acceptance. A student is acceptable to a
/// college iff listed in its preference. `proposal_order` permutes the free
/// queue (identity when empty); the outcome does not depend on it.
Matching deferred_acceptance(std::span<const PreferenceList> student_prefs,
                             std::span<const PreferenceList> college_prefs,
                             std::span<const int> quotas,
                             std::span<const int> proposal_order = {});

/// Boston mechanism. In round r every unmatched student applies to its r-th
/// choice if that college still has seats; colleges admit applicants in
/// `college_priority` order until full, and admissions are final.
Matching boston(std::span<const PreferenceList> student_prefs,
                std::span<const PreferenceList> college_priority, std::span<const int> quotas);

/// Reciprocating lists of all colleges under the configured mode. For kPureBM
/// these are the raw-score priorities used inside Boston rounds.
std::vector<PreferenceList> college_preferences(const Instance& instance,
                                                std::span<const PreferenceList> submitted,
                                                const MechanismConfig& config);

/// Preprocess (merit ordering) followed by the matching phase. Throws
/// InvalidInstance if the instance or the submitted profile is malformed.
Matching generalized_match(const Instance& instance, std::span<const PreferenceList> submitted,
                           const MechanismConfig& config = {});

/// Skips validation; for inner loops over instances already checked.
Matching generalized_match_unchecked(const Instance& instance,
                                     std::span<const PreferenceList> submitted,
                                     const MechanismConfig& config = {});

// Marriage variant: both sides hold an initial list and an initial rating of
// every member of the other side. A receiver's reciprocating list ranks the
// proposers on its initial list by marriage_merit, where the bonus rank is the
// receiver's position on the proposer's initial list (bonus 0 if absent).

struct MarriageSide {
  std::vector<PreferenceList> prefs;          // initial lists
  std::vector<std::vector<double>> ratings;   // ratings[i][j]: i's rating of j
  std::vector<double> alpha;
  std::vector<BonusFunction> bonus;

  int size() const { return static_cast<int>(prefs.size()); }
};

enum class Proposer { kMen, kWomen };

struct MarriageResult {
  std::vector<int> wife_of;     // per man, kUnmatched if single
  std::vector<int> husband_of;  // per woman
};

/// Reciprocating list of each member of `side`, built against `other`.
std::vector<PreferenceList> marriage_reciprocating(const MarriageSide& side,
                                                   const MarriageSide& other);

MarriageResult marriage_match(const MarriageSide& men, const MarriageSide& women,
                              Proposer proposer = Proposer::kMen);

}  // namespace rmatch
