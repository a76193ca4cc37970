#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmatch/instance_io.hpp"
#include "test_support.hpp"

namespace rmatch {
namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + MATCH_BINARY + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rmatch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string save(const std::string& name, const Instance& inst) {
    return write(name, format_instance(inst));
  }
  static std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

Instance instance_i1() {
  return testing::make_instance({90, 80, 70}, {0, 0}, {{0, 1}, {0, 1}, {0, 1}});
}

TEST_F(Cli, Solve) {
  const auto path = save("i1.json", instance_i1());
  const auto r = run("solve --instance " + path);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "s1,c1\ns2,c2\ns3,-\n");
  EXPECT_EQ(run("solve --mode bm --instance " + path).out, r.out);
}

TEST_F(Cli, SolveRejectsInvalidInstance) {
  auto inst = instance_i1();
  inst.colleges[0].alpha = 2.0;
  EXPECT_EQ(run("solve --instance " + save("bad.json", inst)).status, 2);
  EXPECT_NE(run("solve --instance " + (dir_ / "missing.json").string()).status, 0);
}

TEST_F(Cli, CheckReportsBlockingPairs) {
  const auto path = save("i1.json", instance_i1());
  const auto swapped = write("swapped.csv", "s1,c2\ns2,c1\ns3,-\n");
  const auto r = run("check --instance " + path + " --matching " + swapped);
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "student,college,student_gain,college_gain\ns1,c1,1,1\n");
  const auto da = write("da.csv", "s1,c1\ns2,c2\ns3,-\n");
  EXPECT_EQ(run("check --instance " + path + " --matching " + da).status, 0);
}

TEST_F(Cli, Audit) {
  const auto inst = testing::make_instance(
      {26.36, 44.13, 50.4, 2.4}, {0.185, 0.589, 0.4, 0.953},
      {{0, 1, 3, 2}, {1, 0, 3, 2}, {1, 0, 3, 2}, {2, 3, 0, 1}});
  const auto r = run("audit --instance " + save("m.json", inst) + " --college c3");
  EXPECT_EQ(r.status, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "seed,college,strategy_id,dropped_count,improved");
  int rows = 0, improved = 0;
  while (std::getline(lines, line)) {
    ++rows;
    improved += line.ends_with(",true");
  }
  EXPECT_EQ(rows, 15);
  EXPECT_GT(improved, 0);
  EXPECT_EQ(run("audit --instance " + save("m2.json", inst) + " --college c9").status, 2);
}

TEST_F(Cli, OracleListsStableMatchings) {
  const auto inst = testing::make_instance({90, 80}, {1, 1}, {{0, 1}, {1, 0}});
  const auto r = run("oracle --instance " + save("x.json", inst));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "# stable_matchings,1\n# matching,1,deferred_acceptance\ns1,c1\ns2,c2\n"
            "# da_student_optimal,true\n");
}

TEST_F(Cli, ReplayMatchesTheFullRun) {
  const std::string common = "run welfare --trials 6 --beta-step 0.5 --seed 5";
  ASSERT_EQ(run(common + " --out " + dir_.string()).status, 0);
  const std::string trials = slurp(dir_ / "welfare_trials.csv");
  EXPECT_NE(slurp(dir_ / "welfare.csv").find("beta,mechanism,mean_piS"), std::string::npos);

  const auto replay = run(common + " --replay 5:3");
  ASSERT_EQ(replay.status, 0);
  std::istringstream lines(replay.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "seed,trial,beta,mechanism,pi_S,pi_C,Pi");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("5,3,", 0), 0u) << line;
    EXPECT_NE(trials.find(line + "\n"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 6);
}

TEST_F(Cli, SeedFromEnvironmentWins) {
  const std::string args = "run strategy --trials 20 --strategic-count 3";
  const auto env = run(args + " --seed 9", "MATCH_SEED=5");
  const auto flag = run(args + " --seed 5");
  ASSERT_EQ(env.status, 0);
  EXPECT_EQ(env.out, flag.out);
  EXPECT_NE(run(args + " --seed 9").out, flag.out);
}

TEST_F(Cli, PerRankToDirectory) {
  ASSERT_EQ(run("run per-rank --trials 5 --out " + dir_.string()).status, 0);
  const auto agg = slurp(dir_ / "per_rank.csv");
  EXPECT_EQ(agg.substr(0, agg.find('\n')), "beta,rank,mode,mean_u,se");
  EXPECT_TRUE(fs::exists(dir_ / "per_rank_trials.csv"));
}

TEST_F(Cli, RejectsUnknownExperiment) { EXPECT_NE(run("run nonsense").status, 0); }

}  // namespace
}  // namespace rmatch
