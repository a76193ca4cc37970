#include "rmatch/strategy.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rmatch/simgen.hpp"
#include "test_support.hpp"

namespace rmatch {
namespace {

using Lists = std::vector<PreferenceList>;

TEST(StrategyS, TableRows) {
  const PreferenceList t{0, 1, 2, 3, 4};
  EXPECT_EQ(strategy_s(t, 1), (PreferenceList{0, 1, 2, 3, 4}));
  EXPECT_EQ(strategy_s(t, 2), (PreferenceList{1, 2, 3, 4, 0}));
  EXPECT_EQ(strategy_s(t, 3), (PreferenceList{2, 1, 3, 4, 0}));
  EXPECT_EQ(strategy_s(t, 4), (PreferenceList{3, 1, 2, 4, 0}));
  EXPECT_EQ(strategy_s(t, 5), (PreferenceList{4, 1, 2, 3, 0}));
  EXPECT_EQ(strategy_s(t, 9), (PreferenceList{4, 1, 2, 3, 0}));
}

TEST(StrategyS, FollowsTheTrueOrderNotCollegeIndices) {
  const PreferenceList t{3, 1, 4, 0, 2};
  EXPECT_EQ(strategy_s(t, 3), (PreferenceList{4, 1, 0, 2, 3}));
}

TEST(StrategyS, RequiresFiveColleges) {
  EXPECT_THROW(strategy_s(PreferenceList{0, 1, 2, 3}, 2), std::invalid_argument);
  EXPECT_THROW(strategy_s(PreferenceList{0, 1, 2, 3, 4, 5}, 2), std::invalid_argument);
}

TEST(CustomReports, FavoriteLastAndSwap) {
  EXPECT_EQ(favorite_last(PreferenceList{2, 0, 1}), (PreferenceList{0, 1, 2}));
  EXPECT_EQ(swap_ranks(PreferenceList{0, 1, 2, 3}, 3, 1), (PreferenceList{2, 1, 0, 3}));
  EXPECT_THROW(swap_ranks(PreferenceList{0, 1}, 3, 1), std::out_of_range);
}

TEST(ScoreRanks, HighestFirstTiesByIndex) {
  const auto inst = testing::make_instance({50, 90, 50, 10}, {0}, {{0}, {0}, {0}, {0}});
  EXPECT_EQ(score_ranks(inst), (std::vector<int>{2, 1, 3, 4}));
}

TEST(DeviationThreshold, Values) {
  const BonusFunction h({100, 90});
  EXPECT_DOUBLE_EQ(deviation_threshold(0.5, h), 10.0);
  EXPECT_NEAR(deviation_threshold(0.9, h), 90.0, 1e-9);
  EXPECT_LT(deviation_threshold(1e-9, h), 1e-7);
}

TEST(DeviationThreshold, DomainErrors) {
  const BonusFunction h({100, 90});
  EXPECT_THROW(deviation_threshold(0.0, h), std::domain_error);
  EXPECT_THROW(deviation_threshold(1.0, h), std::domain_error);
  EXPECT_THROW(deviation_threshold(0.5, BonusFunction({100})), std::domain_error);
}

TEST(Deviation, GapBelowThresholdRewardsTheSwap) {
  for (double eps : {0.1, 0.5, 0.8}) {
    const double delta = deviation_threshold(eps, BonusFunction({100, 90}));
    const double f2 = 99.0 - delta;
    const double f1 = f2 + 0.5 * delta;
    const auto truthful = testing::deviation_instance(eps, f1, f2, false);
    const auto swapped = testing::deviation_instance(eps, f1, f2, true);
    EXPECT_FALSE(generalized_match(truthful, truthful.student_prefs).matched(0)) << eps;
    EXPECT_EQ(generalized_match(swapped, swapped.student_prefs)[0], 1) << eps;
  }
}

TEST(Deviation, GapAboveThresholdTruthAlreadyWins) {
  const double delta = deviation_threshold(0.5, BonusFunction({100, 90}));
  const auto truthful = testing::deviation_instance(0.5, 95, 95 - 1.5 * delta, false);
  EXPECT_EQ(generalized_match(truthful, truthful.student_prefs)[0], 1);
}

// ---------------------------------------------------------------------------

TEST(DroppingStrategies, PowersetOfTwo) {
  const auto all = dropping_strategies(PreferenceList{0, 1}, 2);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[0].dropped, (std::vector<int>{}));
  EXPECT_EQ(all[1].dropped, (std::vector<int>{0}));
  EXPECT_EQ(all[2].dropped, (std::vector<int>{1}));
  EXPECT_EQ(all[3].dropped, (std::vector<int>{0, 1}));
  EXPECT_EQ(all[3].report, (PreferenceList{}));
}

TEST(DroppingStrategies, CountsAndOrderPreservation) {
  const PreferenceList base{4, 2, 0, 3, 1};
  EXPECT_EQ(dropping_strategies(base, 5).size(), 32u);
  EXPECT_EQ(dropping_strategies(base, 1).size(), 6u);
  EXPECT_EQ(dropping_strategies(base, 0).size(), 1u);
  for (const auto& d : dropping_strategies(base, 5)) {
    EXPECT_EQ(d.report.size() + d.dropped.size(), base.size());
    for (std::size_t i = 1; i < d.report.size(); ++i) {
      EXPECT_LT(*rank_of(base, d.report[i - 1]), *rank_of(base, d.report[i]));
    }
  }
}

TEST(CompareSets, Responsive) {
  const PreferenceList t{0, 1, 2, 3};
  using V = std::vector<int>;
  EXPECT_EQ(compare_sets(t, V{0}, V{1}), SetComparison::kBetter);
  EXPECT_EQ(compare_sets(t, V{1}, V{0}), SetComparison::kWorse);
  EXPECT_EQ(compare_sets(t, V{3, 0}, V{1}), SetComparison::kBetter);
  EXPECT_EQ(compare_sets(t, V{1, 2}, V{0, 3}), SetComparison::kIncomparable);
  EXPECT_EQ(compare_sets(t, V{2, 1}, V{1, 2}), SetComparison::kEqual);
  EXPECT_EQ(compare_sets(t, V{}, V{}), SetComparison::kEqual);
  EXPECT_EQ(compare_sets(t, V{}, V{3}), SetComparison::kWorse);
  EXPECT_EQ(compare_sets(t, V{1}, V{0, 2}), SetComparison::kWorse);
}

// ---------------------------------------------------------------------------

// s1 and s2 with crossed preferences plus a separate mutual pair (s3, c3).
const Lists kCrossStudents{{0, 1}, {1, 0}, {2}};
const Lists kCrossColleges{{1, 0}, {0, 1}, {2}};
const std::vector<int> kOnes{1, 1, 1};

TEST(RejectionChains, DisplacedStudentComesBack) {
  // c1 rejects s1; s1 displaces s2 at c2, and s2 applies to c1 next.
  const std::vector<int> rejected{0};
  const auto r = rejection_chains(kCrossStudents, kCrossColleges, kOnes, 0, rejected);
  EXPECT_TRUE(r.returns_to_c);
  EXPECT_EQ(r.chain_start, 0);
  EXPECT_EQ(r.returning_student, 1);
  EXPECT_TRUE(r.final_assignment_of_c.empty());
}

TEST(RejectionChains, ChainEndsWhenListIsExhausted) {
  const std::vector<int> rejected{2};
  const auto r = rejection_chains(kCrossStudents, kCrossColleges, kOnes, 2, rejected);
  EXPECT_FALSE(r.returns_to_c);
  EXPECT_EQ(r.returning_student, kUnmatched);
  EXPECT_TRUE(r.final_assignment_of_c.empty());
}

TEST(RejectionChains, PeelsLeastPreferredFirst) {
  // c1 (quota 2) holds s1 and s2 and prefers s1; s2 leaves quietly for c2,
  // then s1 is peeled off and also finds a seat elsewhere.
  const Lists sp{{0, 1}, {0, 1}};
  const Lists cp{{0, 1}, {0, 1}};
  const std::vector<int> quotas{2, 2};
  const std::vector<int> rejected{0, 1};
  const auto r = rejection_chains(sp, cp, quotas, 0, rejected);
  EXPECT_FALSE(r.returns_to_c);
  EXPECT_EQ(r.chain_start, 0);
}

TEST(RejectionChains, InputErrors) {
  EXPECT_THROW(rejection_chains(kCrossStudents, kCrossColleges, kOnes, 0, std::vector<int>{}),
               std::invalid_argument);
  EXPECT_THROW(rejection_chains(kCrossStudents, kCrossColleges, kOnes, 0, std::vector<int>{1}),
               std::invalid_argument);
}

TEST(RejectionChains, RawScoreChainsReturnWithALowerScore) {
  GenConfig g;
  g.n_students = 8;
  g.n_colleges = 4;
  g.quota = 2;
  g.reputations = {100, 90, 80, 70};
  g.alpha = AlphaDistribution::constant(0.0);
  int returns = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    g.beta = (t % 3) * 0.5;
    const auto inst = gen_instance(g, {41, t});
    const auto cp = testing::recip_lists(inst, t);
    const auto mu = deferred_acceptance(inst.student_prefs, cp, inst.quotas());
    const auto held = mu.members(inst.num_colleges());
    for (int c = 0; c < inst.num_colleges(); ++c) {
      for (const auto& d : dropping_strategies(held[c], 2)) {
        if (d.dropped.empty()) continue;
        const auto r = rejection_chains(inst.student_prefs, cp, inst.quotas(), c, d.dropped);
        if (!r.returns_to_c) continue;
        ++returns;
        EXPECT_LT(inst.students[r.returning_student].score, inst.students[r.chain_start].score);
      }
    }
  }
  EXPECT_GT(returns, 0);
}

// ---------------------------------------------------------------------------

TEST(Audit, CrossedListsOfferNothingToGain) {
  const auto inst = testing::make_instance({90, 80, 50}, {0, 0, 0}, {{0, 1}, {1, 0}, {2}});
  const auto cp = testing::recip_lists(inst, 0);
  for (int c = 0; c < 3; ++c) {
    const auto r = college_manipulation_audit(inst, inst.student_prefs, c, 3);
    EXPECT_FALSE(r.any_improvement());
    EXPECT_EQ(r.rows.size(), (std::size_t{1} << cp[c].size()) - 1);
  }
}

// Four students and colleges with blended merits where c3 ends up with its
// last choice, s4. Dropping s4 sends s4 to c4, which bumps s1, who then
// takes c3.
Instance manipulable_instance() {
  return testing::make_instance({26.36, 44.13, 50.4, 2.4}, {0.185, 0.589, 0.4, 0.953},
                                {{0, 1, 3, 2}, {1, 0, 3, 2}, {1, 0, 3, 2}, {2, 3, 0, 1}});
}

TEST(Audit, FindsAProfitableDrop) {
  const auto inst = manipulable_instance();
  const auto cp = testing::recip_lists(inst, 0);
  ASSERT_EQ(cp[2], (PreferenceList{2, 1, 0, 3}));
  ASSERT_EQ(cp[3], (PreferenceList{3, 2, 1, 0}));
  const auto r = college_manipulation_audit(inst, inst.student_prefs, 2, 4);
  EXPECT_EQ(r.truthful_set, (std::vector<int>{3}));
  EXPECT_TRUE(r.any_improvement());
  EXPECT_EQ(r.best_set, (std::vector<int>{0}));
  EXPECT_EQ(r.rows.size(), 15u);

  std::ostringstream os;
  write_audit_header(os);
  write_audit_rows(os, 0, "c3", r);
  EXPECT_NE(os.str().find("0,c3,"), std::string::npos);
  EXPECT_NE(os.str().find(",true\n"), std::string::npos);
}

TEST(Audit, DroppingTheWholeAssignedSetNeverHelps) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const auto inst = testing::random_instance(rng, {.max_students = 6, .max_colleges = 3});
    auto cp = testing::recip_lists(inst, 0);
    const auto truthful = deferred_acceptance(inst.student_prefs, cp, inst.quotas())
                              .members(inst.num_colleges());
    for (int c = 0; c < inst.num_colleges(); ++c) {
      auto dropped = cp;
      std::erase_if(dropped[c], [&](int s) {
        return std::find(truthful[c].begin(), truthful[c].end(), s) != truthful[c].end();
      });
      const auto outcome = deferred_acceptance(inst.student_prefs, dropped, inst.quotas())
                               .members(inst.num_colleges())[c];
      EXPECT_NE(compare_sets(cp[c], outcome, truthful[c]), SetComparison::kBetter);
    }
  }
}

TEST(Audit, QuotaOneFourByThreeNeverImproves) {
  GenConfig g;
  g.n_students = 4;
  g.n_colleges = 3;
  g.reputations = {100, 90, 80};
  for (std::uint64_t t = 0; t < 500; ++t) {
    const auto inst = gen_instance(g, {8, t});
    for (int c = 0; c < 3; ++c) {
      EXPECT_FALSE(college_manipulation_audit(inst, inst.student_prefs, c, 4).any_improvement());
    }
  }
}

}  // namespace
}  // namespace rmatch
