#include "rmatch/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "rmatch/matching.hpp"
#include "rmatch/rng.hpp"
#include "rmatch/strategy.hpp"
#include "rmatch/welfare.hpp"

namespace rmatch {

const char* to_string(Mechanism m) { return m == Mechanism::kHybrid ? "hybrid" : "gs"; }
const char* to_string(ReportMode m) {
  return m == ReportMode::kTruthful ? "truthful" : "strategy_s";
}

void ExperimentSpec::check() const {
  gen.check();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(beta_step > 0.0 && beta_step <= 1.0)) {
    throw std::invalid_argument("beta step must lie in (0, 1]");
  }
  for (double b : per_rank_betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("per-rank beta outside [0,1]");
  }
  if (strategic_count && (*strategic_count < 0 || *strategic_count > gen.n_students)) {
    throw std::invalid_argument("strategic count outside 0..n_students");
  }
  if (mechanisms.empty()) throw std::invalid_argument("no mechanism selected");
}

std::vector<double> ExperimentSpec::beta_grid() const {
  const long steps = std::lround(std::floor(1.0 / beta_step + 1e-9));
  std::vector<double> grid;
  for (long i = 0; i <= steps; ++i) grid.push_back(std::round(i * beta_step * 1e9) / 1e9);
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

void apply_config(ExperimentSpec& spec, const std::string& json_text) {
  const auto doc = nlohmann::json::parse(json_text);
  auto& g = spec.gen;
  g.n_students = doc.value("n_students", g.n_students);
  g.n_colleges = doc.value("n_colleges", g.n_colleges);
  g.quota = doc.value("quota", g.quota);
  g.beta = doc.value("beta", g.beta);
  g.f_max = doc.value("f_max", g.f_max);
  if (doc.contains("reputations")) g.reputations = doc.at("reputations").get<std::vector<double>>();
  if (doc.contains("alpha")) {
    const auto& a = doc.at("alpha");
    const auto kind = a.value("kind", std::string("bernoulli_half"));
    if (kind == "bernoulli_half") {
      g.alpha = AlphaDistribution::bernoulli_half();
    } else if (kind == "uniform") {
      g.alpha = AlphaDistribution::uniform(a.value("a", 0.0), a.value("b", 1.0));
    } else if (kind == "constant") {
      g.alpha = AlphaDistribution::constant(a.value("value", 0.0));
    } else {
      throw std::invalid_argument("unknown alpha kind '" + kind + "'");
    }
  }
  spec.seed = doc.value("seed", spec.seed);
  spec.trials = doc.value("trials", spec.trials);
  spec.beta_step = doc.value("beta_step", spec.beta_step);
  if (doc.contains("strategic_count")) spec.strategic_count = doc.at("strategic_count").get<int>();
  if (doc.contains("strategic_selection")) {
    const auto sel = doc.at("strategic_selection").get<std::string>();
    if (sel == "lowest") {
      spec.selection = StrategicSelection::kLowest;
    } else if (sel == "random") {
      spec.selection = StrategicSelection::kRandom;
    } else {
      throw std::invalid_argument("unknown strategic_selection '" + sel + "'");
    }
  }
  if (doc.contains("betas")) spec.per_rank_betas = doc.at("betas").get<std::vector<double>>();
}

namespace {

std::uint64_t lottery_seed_for(std::uint64_t seed, std::uint64_t trial) {
  return combine(combine(seed, trial), static_cast<std::uint64_t>(Purpose::kLottery));
}

struct Scored {
  Instance instance;
  Matching matching;
  std::vector<PreferenceList> college_prefs;  // reciprocating, from the submitted lists
};

Scored match_trial(Instance instance, const std::vector<PreferenceList>& submitted,
                   std::uint64_t seed, std::uint64_t trial) {
  MechanismConfig config;
  config.lottery_seed = lottery_seed_for(seed, trial);
  auto college_prefs = college_preferences(instance, submitted, config);
  auto matching = deferred_acceptance(submitted, college_prefs, instance.quotas());
  return {std::move(instance), std::move(matching), std::move(college_prefs)};
}

std::vector<PreferenceList> true_college_prefs(const Instance& instance, std::uint64_t seed,
                                               std::uint64_t trial) {
  MechanismConfig config;
  config.lottery_seed = lottery_seed_for(seed, trial);
  return college_preferences(instance, instance.student_prefs, config);
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

MeanSe summarize_finite(const std::vector<double>& xs) {
  std::vector<double> finite;
  for (double x : xs) {
    if (!std::isnan(x)) finite.push_back(x);
  }
  if (finite.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0, 0};
  return summarize(finite);
}

}  // namespace

// ---------------------------------------------------------------------------

WelfareTrialRow welfare_trial(const GenConfig& gen, double beta, Mechanism mechanism,
                              std::uint64_t seed, std::uint64_t trial) {
  GenConfig g = gen;
  g.beta = beta;
  if (mechanism == Mechanism::kPureGS) g.alpha = AlphaDistribution::constant(0.0);
  Instance inst = gen_instance(g, {seed, trial});
  const auto submitted = inst.student_prefs;
  const auto scored = match_trial(std::move(inst), submitted, seed, trial);
  const auto w = social_welfare(scored.matching, submitted, scored.college_prefs,
                                UtilityFunction::linear(g.n_colleges),
                                UtilityFunction::linear(g.n_students), scored.instance.quotas());
  return {trial, beta, mechanism, w.students, w.colleges, w.total()};
}

WelfareSweep run_welfare_sweep(const ExperimentSpec& spec) {
  spec.check();
  const auto grid = spec.beta_grid();
  const std::size_t mechs = spec.mechanisms.size();
  const std::size_t trials = static_cast<std::size_t>(spec.trials);

  WelfareSweep out;
  out.trials = run_trials(spec.execution, grid.size() * mechs * trials, [&](std::size_t f) {
    const std::size_t t = f % trials;
    const std::size_t mech = (f / trials) % mechs;
    const std::size_t point = f / trials / mechs;
    return welfare_trial(spec.gen, grid[point], spec.mechanisms[mech], spec.seed,
                         spec.first_trial + t);
  });

  for (std::size_t point = 0; point < grid.size(); ++point) {
    for (std::size_t mech = 0; mech < mechs; ++mech) {
      std::vector<double> s, c, p;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto& row = out.trials[(point * mechs + mech) * trials + t];
        s.push_back(row.pi_s);
        c.push_back(row.pi_c);
        p.push_back(row.pi);
      }
      out.points.push_back({grid[point], spec.mechanisms[mech], summarize(s), summarize(c),
                            summarize(p)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PreferenceList strategic_report(std::span<const int> true_pref, int score_rank, int quota) {
  if (true_pref.size() == 5) return strategy_s(true_pref, score_rank);
  if (score_rank <= quota) return {true_pref.begin(), true_pref.end()};
  return favorite_last(true_pref);
}

namespace {

std::vector<bool> pick_strategic(const std::vector<int>& ranks, int k,
                                 StrategicSelection selection, std::uint64_t seed,
                                 std::uint64_t trial) {
  const int n = static_cast<int>(ranks.size());
  std::vector<bool> strategic(n, false);
  if (selection == StrategicSelection::kLowest) {
    for (int s = 0; s < n; ++s) strategic[s] = ranks[s] > n - k;
    return strategic;
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Substream rng(seed, trial, Purpose::kStrategicPick, static_cast<std::uint64_t>(k));
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
    strategic[pool[i]] = true;
  }
  return strategic;
}

}  // namespace

StrategyTrialRow strategy_trial(const GenConfig& gen, int k, StrategicSelection selection,
                                std::uint64_t seed, std::uint64_t trial) {
  GenConfig g = gen;
  g.beta = 1.0;
  Instance inst = gen_instance(g, {seed, trial});
  const auto ranks = score_ranks(inst);
  const auto strategic = pick_strategic(ranks, k, selection, seed, trial);

  auto submitted = inst.student_prefs;
  for (int s = 0; s < inst.num_students(); ++s) {
    if (strategic[s]) submitted[s] = strategic_report(inst.student_prefs[s], ranks[s], g.quota);
  }
  const auto truth_prefs = true_college_prefs(inst, seed, trial);
  const auto scored = match_trial(std::move(inst), submitted, seed, trial);
  const auto& instance = scored.instance;
  const auto u_s = UtilityFunction::linear(g.n_colleges);
  const auto u_c = UtilityFunction::linear(g.n_students);
  const auto quotas = instance.quotas();

  std::vector<double> us, ut;
  double pi_s = 0.0;
  for (int s = 0; s < instance.num_students(); ++s) {
    const double u = agent_utility(Side::kStudents, s, scored.matching, instance.student_prefs, u_s);
    pi_s += u;
    (strategic[s] ? us : ut).push_back(u);
  }
  StrategyTrialRow row;
  row.trial = trial;
  row.k = k;
  row.u_strategic = mean_of(us);
  row.u_truthful = mean_of(ut);
  row.pi_s = pi_s;
  row.pi_c_submitted = aggregate(Side::kColleges, scored.matching, scored.college_prefs, u_c, quotas);
  row.pi_c_true = aggregate(Side::kColleges, scored.matching, truth_prefs, u_c, quotas);
  return row;
}

StrategyStudy run_strategy_count(const ExperimentSpec& spec) {
  spec.check();
  std::vector<int> ks;
  if (spec.strategic_count) {
    ks.push_back(*spec.strategic_count);
  } else {
    for (int k = 0; k <= spec.gen.n_students; ++k) ks.push_back(k);
  }
  const std::size_t trials = static_cast<std::size_t>(spec.trials);

  StrategyStudy out;
  out.trials = run_trials(spec.execution, ks.size() * trials, [&](std::size_t f) {
    return strategy_trial(spec.gen, ks[f / trials], spec.selection, spec.seed,
                          spec.first_trial + f % trials);
  });
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> us, ut, ps, pcs, pct;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto& row = out.trials[i * trials + t];
      us.push_back(row.u_strategic);
      ut.push_back(row.u_truthful);
      ps.push_back(row.pi_s);
      pcs.push_back(row.pi_c_submitted);
      pct.push_back(row.pi_c_true);
    }
    out.points.push_back({ks[i], summarize_finite(us), summarize_finite(ut), summarize(ps),
                          summarize(pcs), summarize(pct)});
  }
  return out;
}

// ---------------------------------------------------------------------------

double per_rank_trial(const GenConfig& gen, double beta, int rank, ReportMode mode,
                      std::uint64_t seed, std::uint64_t trial) {
  GenConfig g = gen;
  g.beta = beta;
  Instance inst = gen_instance(g, {seed, trial});
  const auto ranks = score_ranks(inst);
  const int deviator = static_cast<int>(std::find(ranks.begin(), ranks.end(), rank) - ranks.begin());
  if (deviator >= inst.num_students()) throw std::invalid_argument("score rank out of range");

  auto submitted = inst.student_prefs;
  if (mode == ReportMode::kStrategyS) {
    submitted[deviator] = strategic_report(inst.student_prefs[deviator], rank, g.quota);
  }
  const auto scored = match_trial(std::move(inst), submitted, seed, trial);
  return agent_utility(Side::kStudents, deviator, scored.matching, scored.instance.student_prefs,
                       UtilityFunction::linear(g.n_colleges));
}

PerRankStudy run_per_rank(const ExperimentSpec& spec) {
  spec.check();
  const auto& betas = spec.per_rank_betas;
  const std::size_t n = static_cast<std::size_t>(spec.gen.n_students);
  const std::size_t trials = static_cast<std::size_t>(spec.trials);
  constexpr ReportMode kModes[] = {ReportMode::kTruthful, ReportMode::kStrategyS};

  PerRankStudy out;
  out.trials = run_trials(spec.execution, betas.size() * n * 2 * trials, [&](std::size_t f) {
    const std::size_t t = f % trials;
    const std::size_t mode = (f / trials) % 2;
    const std::size_t rank = (f / trials / 2) % n;
    const std::size_t b = f / trials / 2 / n;
    const std::uint64_t trial = spec.first_trial + t;
    return PerRankTrialRow{trial, betas[b], static_cast<int>(rank) + 1, kModes[mode],
                           per_rank_trial(spec.gen, betas[b], static_cast<int>(rank) + 1,
                                          kModes[mode], spec.seed, trial)};
  });
  for (std::size_t g = 0; g < betas.size() * n * 2; ++g) {
    std::vector<double> u;
    for (std::size_t t = 0; t < trials; ++t) u.push_back(out.trials[g * trials + t].utility);
    const auto& first = out.trials[g * trials];
    out.points.push_back({first.beta, first.rank, first.mode, summarize(u)});
  }
  return out;
}

// ---------------------------------------------------------------------------

AnonymityProbe run_anonymity_probe(const GenConfig& gen, const PreferenceList& probe_list,
                                   int trials, std::uint64_t seed, Execution execution) {
  GenConfig g = gen;
  g.beta = 0.0;
  const int choices = static_cast<int>(probe_list.size());
  const auto outcomes = run_trials(execution, static_cast<std::size_t>(trials), [&](std::size_t t) {
    Instance inst = gen_instance(g, {seed, t});
    auto submitted = inst.student_prefs;
    submitted[0] = probe_list;
    const auto scored = match_trial(std::move(inst), submitted, seed, t);
    if (!scored.matching.matched(0)) return choices;
    return *rank_of(probe_list, scored.matching[0]) - 1;
  });

  AnonymityProbe out;
  for (int i = 0; i <= choices; ++i) {
    std::vector<double> hit;
    hit.reserve(outcomes.size());
    for (int o : outcomes) hit.push_back(o == i ? 1.0 : 0.0);
    out.by_choice.push_back(summarize(hit));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PrecisionGuard {
  std::ostream& os;
  std::streamsize saved;
  explicit PrecisionGuard(std::ostream& o) : os(o), saved(o.precision(10)) {}
  ~PrecisionGuard() { os.precision(saved); }
};

}  // namespace

void write_welfare_csv(std::ostream& os, const WelfareSweep& sweep) {
  PrecisionGuard guard(os);
  os << "beta,mechanism,mean_piS,se_piS,mean_piC,se_piC,mean_Pi,se_Pi\n";
  for (const auto& p : sweep.points) {
    os << p.beta << ',' << to_string(p.mechanism) << ',' << p.pi_s.mean << ',' << p.pi_s.se << ','
       << p.pi_c.mean << ',' << p.pi_c.se << ',' << p.pi.mean << ',' << p.pi.se << '\n';
  }
}

void write_welfare_trials_csv(std::ostream& os, std::uint64_t seed, const WelfareSweep& sweep) {
  PrecisionGuard guard(os);
  os << "seed,trial,beta,mechanism,pi_S,pi_C,Pi\n";
  for (const auto& r : sweep.trials) {
    os << seed << ',' << r.trial << ',' << r.beta << ',' << to_string(r.mechanism) << ','
       << r.pi_s << ',' << r.pi_c << ',' << r.pi << '\n';
  }
}

void write_strategy_csv(std::ostream& os, const StrategyStudy& study) {
  PrecisionGuard guard(os);
  os << "k,mean_u_strategic,se,mean_u_truthful,se,piS,piC_submitted,piC_true\n";
  for (const auto& p : study.points) {
    os << p.k << ',' << p.u_strategic.mean << ',' << p.u_strategic.se << ',' << p.u_truthful.mean
       << ',' << p.u_truthful.se << ',' << p.pi_s.mean << ',' << p.pi_c_submitted.mean << ','
       << p.pi_c_true.mean << '\n';
  }
}

void write_strategy_trials_csv(std::ostream& os, std::uint64_t seed, const StrategyStudy& study) {
  PrecisionGuard guard(os);
  os << "seed,trial,k,u_strategic,u_truthful,piS,piC_submitted,piC_true\n";
  for (const auto& r : study.trials) {
    os << seed << ',' << r.trial << ',' << r.k << ',' << r.u_strategic << ',' << r.u_truthful
       << ',' << r.pi_s << ',' << r.pi_c_submitted << ',' << r.pi_c_true << '\n';
  }
}

void write_per_rank_csv(std::ostream& os, const PerRankStudy& study) {
  PrecisionGuard guard(os);
  os << "beta,rank,mode,mean_u,se\n";
  for (const auto& p : study.points) {
    os << p.beta << ',' << p.rank << ',' << to_string(p.mode) << ',' << p.utility.mean << ','
       << p.utility.se << '\n';
  }
}

void write_per_rank_trials_csv(std::ostream& os, std::uint64_t seed, const PerRankStudy& study) {
  PrecisionGuard guard(os);
  os << "seed,trial,beta,rank,mode,u\n";
  for (const auto& r : study.trials) {
    os << seed << ',' << r.trial << ',' << r.beta << ',' << r.rank << ',' << to_string(r.mode)
       << ',' << r.utility << '\n';
  }
}

}  // namespace rmatch
