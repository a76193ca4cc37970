#include "rmatch/welfare.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rmatch/matching.hpp"
#include "rmatch/simgen.hpp"
#include "test_support.hpp"

namespace rmatch {
namespace {

using Lists = std::vector<PreferenceList>;

const UtilityFunction kU5 = UtilityFunction::linear(5);
const UtilityFunction kU10 = UtilityFunction::linear(10);

TEST(UtilityFunction, ElevenMinusRank) {
  EXPECT_DOUBLE_EQ(kU5(1), 10);
  EXPECT_DOUBLE_EQ(kU5(5), 6);
  EXPECT_DOUBLE_EQ(kU10(10), 1);
  EXPECT_DOUBLE_EQ(kU5(0), 0);
  EXPECT_THROW(kU5(6), std::domain_error);
  EXPECT_THROW(kU5(-1), std::domain_error);
  EXPECT_TRUE(kU10.is_valid());
  EXPECT_FALSE((UtilityFunction{{1, 2}, 0}).is_valid());
}

TEST(AgentUtility, StudentAndCollegeExamples) {
  const Lists sp{{0, 1}, {1, 0}, {0, 1}};
  const Lists cp{{2, 1, 0}, {0, 1}};
  const Matching m(std::vector<int>{0, kUnmatched, 1});
  EXPECT_DOUBLE_EQ(agent_utility(Side::kStudents, 0, m, sp, kU5), 10);
  EXPECT_DOUBLE_EQ(agent_utility(Side::kStudents, 1, m, sp, kU5), 0);
  EXPECT_DOUBLE_EQ(agent_utility(Side::kStudents, 2, m, sp, kU5), 9);
  // c1 holds its third-listed student.
  EXPECT_DOUBLE_EQ(agent_utility(Side::kColleges, 0, m, cp, kU10), 8);
}

TEST(AgentUtility, EmptySeatsCountAsUnmatched) {
  UtilityFunction u = kU10;
  u.unmatched = -1;
  const Lists cp{{0, 1}};
  EXPECT_DOUBLE_EQ(agent_utility(Side::kColleges, 0, Matching(std::vector<int>{0, kUnmatched}),
                                 cp, u, std::vector<int>{3}),
                   10 - 2);
}

TEST(AgentUtility, UnrankedPartnerIsAnError) {
  const Lists sp{{1}};
  EXPECT_THROW(agent_utility(Side::kStudents, 0, Matching(std::vector<int>{0}), sp, kU5),
               std::domain_error);
}

TEST(Aggregate, EmptyMatchingIsZero) {
  const Lists sp(3, PreferenceList{0, 1}), cp(2, PreferenceList{0, 1, 2});
  const Matching m(3);
  EXPECT_DOUBLE_EQ(aggregate(Side::kStudents, m, sp, kU5), 0);
  EXPECT_DOUBLE_EQ(social_welfare(m, sp, cp, kU5, kU10, std::vector<int>{1, 1}).total(), 0);
}

TEST(SocialWelfare, PerfectMutualFirstChoicesReachTheUpperBound) {
  Lists sp, cp;
  for (int i = 0; i < 5; ++i) {
    PreferenceList p(5);
    std::iota(p.begin(), p.end(), 0);
    std::rotate(p.begin(), p.begin() + i, p.end());
    sp.push_back(p);
    cp.push_back(p);
  }
  const Matching m(std::vector<int>{0, 1, 2, 3, 4});
  const auto w = social_welfare(m, sp, cp, kU5, kU5);
  EXPECT_DOUBLE_EQ(w.students, 50);
  EXPECT_DOUBLE_EQ(w.colleges, 50);
  EXPECT_DOUBLE_EQ(w.total(), 100);
}

class CommonListWelfare : public ::testing::TestWithParam<int> {};

TEST_P(CommonListWelfare, BothSidesSumToForty) {
  for (bool pure_gs : {false, true}) {
    GenConfig g;
    g.beta = 1.0;
    if (pure_gs) g.alpha = AlphaDistribution::constant(0.0);
    const auto inst = gen_instance(g, {2, static_cast<std::uint64_t>(GetParam())});
    const auto cp = testing::recip_lists(inst, GetParam());
    const auto m = generalized_match(inst, inst.student_prefs);
    const auto w = social_welfare(m, inst.student_prefs, cp, kU5, kU10, inst.quotas());
    EXPECT_DOUBLE_EQ(w.students, 40);
    EXPECT_DOUBLE_EQ(w.colleges, 40);
    EXPECT_DOUBLE_EQ(w.total(), 80);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CommonListWelfare, ::testing::Range(0, 50));

TEST(SocialWelfare, TotalIsTheSumOfSides) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto inst = testing::random_instance(rng, {.max_students = 8, .max_colleges = 4});
    const auto cp = testing::recip_lists(inst, t);
    const auto m = generalized_match(inst, inst.student_prefs);
    const auto w = social_welfare(m, inst.student_prefs, cp, UtilityFunction::linear(4),
                                  UtilityFunction::linear(8), inst.quotas());
    EXPECT_EQ(w.total(), w.students + w.colleges);
    EXPECT_FALSE(more_efficient(w, w));
  }
}

TEST(WelfareRow, Csv) {
  std::ostringstream os;
  write_welfare_row(os, 3, 0.5, "hybrid", {47, 45});
  EXPECT_EQ(os.str(), "3,0.5,hybrid,47,45,92\n");
}

}  // namespace
}  // namespace rmatch
