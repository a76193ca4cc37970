// Command-line front end: experiments, single-instance solving, college
// manipulation audits and the brute-force stable-set oracle.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rmatch/experiments.hpp"
#include "rmatch/instance_io.hpp"
#include "rmatch/matching.hpp"
#include "rmatch/stability.hpp"
#include "rmatch/strategy.hpp"

namespace fs = std::filesystem;
using namespace rmatch;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

struct RunOptions {
  std::string experiment;
  std::string config;
  std::string out_dir;
  std::uint64_t seed = 1;
  int trials = 0;
  double beta_step = 0.0;
  std::string mechanism = "both";
  int strategic_count = -1;
  std::string selection;
  std::string replay;
  bool serial = false;
};

int run_experiment(const RunOptions& opt) {
  ExperimentSpec spec;
  if (opt.experiment == "welfare") {
    spec.kind = ExperimentKind::kWelfareSweep;
  } else if (opt.experiment == "strategy") {
    spec.kind = ExperimentKind::kStrategyCount;
  } else {
    spec.kind = ExperimentKind::kPerRank;
  }
  if (!opt.config.empty()) apply_config(spec, read_file(opt.config));
  spec.seed = opt.seed;
  if (const char* env = std::getenv("MATCH_SEED")) spec.seed = std::stoull(env);
  if (opt.trials > 0) spec.trials = opt.trials;
  if (opt.beta_step > 0.0) spec.beta_step = opt.beta_step;
  if (opt.mechanism == "hybrid") spec.mechanisms = {Mechanism::kHybrid};
  if (opt.mechanism == "gs") spec.mechanisms = {Mechanism::kPureGS};
  if (opt.strategic_count >= 0) spec.strategic_count = opt.strategic_count;
  if (opt.selection == "random") spec.selection = StrategicSelection::kRandom;
  if (opt.selection == "lowest") spec.selection = StrategicSelection::kLowest;
  if (opt.serial) spec.execution = Execution::kSerial;

  const bool replay = !opt.replay.empty();
  if (replay) {
    const auto colon = opt.replay.find(':');
    if (colon == std::string::npos) throw std::runtime_error("--replay expects SEED:TRIAL");
    spec.seed = std::stoull(opt.replay.substr(0, colon));
    spec.first_trial = std::stoull(opt.replay.substr(colon + 1));
    spec.trials = 1;
  }

  std::ofstream agg, per_trial;
  std::ostream* agg_os = &std::cout;
  std::ostream* trial_os = replay ? &std::cout : nullptr;
  if (!opt.out_dir.empty() && !replay) {
    fs::create_directories(opt.out_dir);
    const std::string stem = opt.experiment == "per-rank" ? "per_rank" : opt.experiment;
    agg = open_out(fs::path(opt.out_dir) / (stem + ".csv"));
    per_trial = open_out(fs::path(opt.out_dir) / (stem + "_trials.csv"));
    agg_os = &agg;
    trial_os = &per_trial;
  }

  switch (spec.kind) {
    case ExperimentKind::kWelfareSweep: {
      const auto sweep = run_welfare_sweep(spec);
      if (!replay) write_welfare_csv(*agg_os, sweep);
      if (trial_os) write_welfare_trials_csv(*trial_os, spec.seed, sweep);
      break;
    }
    case ExperimentKind::kStrategyCount: {
      const auto study = run_strategy_count(spec);
      if (!replay) write_strategy_csv(*agg_os, study);
      if (trial_os) write_strategy_trials_csv(*trial_os, spec.seed, study);
      break;
    }
    case ExperimentKind::kPerRank: {
      const auto study = run_per_rank(spec);
      if (!replay) write_per_rank_csv(*agg_os, study);
      if (trial_os) write_per_rank_trials_csv(*trial_os, spec.seed, study);
      break;
    }
  }
  return 0;
}

MechanismConfig mechanism_config(const std::string& mode, std::uint64_t lottery_seed,
                                 const std::string& unlisted) {
  MechanismConfig config;
  config.lottery_seed = lottery_seed;
  if (mode == "da") config.mode = Mode::kPureDA;
  if (mode == "bm") config.mode = Mode::kPureBM;
  if (unlisted == "acceptable") config.unlisted = UnlistedPolicy::kAcceptable;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sided matching with reciprocating preferences"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a Monte Carlo experiment and write CSV");
  run_cmd->add_option("experiment", run.experiment, "welfare | strategy | per-rank")
      ->required()
      ->check(CLI::IsMember({"welfare", "strategy", "per-rank"}));
  run_cmd->add_option("--config", run.config, "JSON experiment config")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out_dir, "Output directory (default: aggregate CSV to stdout)");
  run_cmd->add_option("--seed", run.seed, "Master seed (MATCH_SEED overrides)");
  run_cmd->add_option("--trials", run.trials, "Trials per grid point");
  run_cmd->add_option("--beta-step", run.beta_step, "Step of the beta grid");
  run_cmd->add_option("--mechanism", run.mechanism)->check(CLI::IsMember({"hybrid", "gs", "both"}));
  run_cmd->add_option("--strategic-count", run.strategic_count, "Only this many strategic students");
  run_cmd->add_option("--strategic-selection", run.selection)
      ->check(CLI::IsMember({"lowest", "random"}));
  run_cmd->add_option("--replay", run.replay, "Recompute one trial, SEED:TRIAL");
  run_cmd->add_flag("--serial", run.serial, "Use the serial reference kernel");

  std::string instance_path, mode = "generalized", unlisted = "unacceptable", college_id,
                             matching_path;
  std::uint64_t lottery_seed = 0;
  int max_drop = -1;

  auto* solve = app.add_subcommand("solve", "Match one instance and print the assignment");
  solve->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  solve->add_option("--mode", mode)->check(CLI::IsMember({"generalized", "da", "bm"}));
  solve->add_option("--lottery-seed", lottery_seed);
  solve->add_option("--unlisted", unlisted)->check(CLI::IsMember({"acceptable", "unacceptable"}));

  auto* check = app.add_subcommand("check", "List blocking pairs of a matching");
  check->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  check->add_option("--matching", matching_path)->required()->check(CLI::ExistingFile);
  check->add_option("--lottery-seed", lottery_seed);

  auto* audit = app.add_subcommand("audit", "Dropping-strategy manipulation audit for one college");
  audit->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  audit->add_option("--college", college_id)->required();
  audit->add_option("--max-drop", max_drop, "Largest number of students dropped (default: all)");
  audit->add_option("--lottery-seed", lottery_seed);

  auto* oracle = app.add_subcommand("oracle", "Enumerate every stable matching of an instance");
  oracle->add_option("--instance", instance_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--lottery-seed", lottery_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run_experiment(run);

    const Instance inst = load_instance(instance_path);
    const auto config = mechanism_config(mode, lottery_seed, unlisted);

    if (*solve) {
      write_matching(std::cout, inst, generalized_match(inst, inst.student_prefs, config));
      return 0;
    }

    const auto college_prefs = college_preferences(inst, inst.student_prefs, config);
    const auto quotas = inst.quotas();

    if (*check) {
      std::ifstream in(matching_path);
      const Matching m = read_matching(in, inst);
      const auto pairs = blocking_pairs(m, inst.student_prefs, college_prefs, quotas);
      write_blocking_pairs(std::cout, inst, pairs);
      return pairs.empty() ? 0 : 1;
    }

    if (*audit) {
      auto c = inst.find_college(college_id);
      if (!c) throw std::runtime_error("unknown college " + college_id);
      const int drop = max_drop < 0 ? inst.num_students() : max_drop;
      const auto result = college_manipulation_audit(inst, inst.student_prefs, *c, drop, config);
      write_audit_header(std::cout);
      write_audit_rows(std::cout, lottery_seed, college_id, result);
      std::cerr << college_id << ": " << result.rows.size() << " dropping strategies, "
                << (result.any_improvement() ? "profitable manipulation found"
                                             : "truthful report is weakly best")
                << '\n';
      return 0;
    }

    if (*oracle) {
      const auto stable = enumerate_stable(inst.student_prefs, college_prefs, quotas);
      const Matching da = deferred_acceptance(inst.student_prefs, college_prefs, quotas);
      std::cout << "# stable_matchings," << stable.size() << '\n';
      for (std::size_t i = 0; i < stable.size(); ++i) {
        std::cout << "# matching," << i + 1 << (stable[i] == da ? ",deferred_acceptance" : "")
                  << '\n';
        write_matching(std::cout, inst, stable[i]);
      }
      std::cout << "# da_student_optimal,"
                << (is_student_optimal(da, stable, inst.student_prefs) ? "true" : "false") << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "match: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
