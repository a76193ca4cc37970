#include "rmatch/simgen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rmatch/rng.hpp"

namespace rmatch {

void GenConfig::check() const {
  if (n_students < 1 || n_colleges < 1) throw std::invalid_argument("GenConfig: empty market");
  if (quota < 1) throw std::invalid_argument("GenConfig: quota must be at least 1");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("GenConfig: beta outside [0,1]");
  if (static_cast<int>(reputations.size()) != n_colleges) {
    throw std::invalid_argument("GenConfig: need one reputation per college");
  }
  if (alpha.kind == AlphaDistribution::Kind::kUniform && alpha.lo > alpha.hi) {
    throw std::invalid_argument("GenConfig: uniform alpha range has a > b");
  }
  if (alpha.lo < 0.0 || alpha.hi > 1.0) throw std::invalid_argument("GenConfig: alpha outside [0,1]");
}

std::vector<PreferenceList> gen_student_prefs(const GenConfig& config, TrialKey key) {
  std::vector<PreferenceList> prefs(config.n_students);
  std::vector<double> value(config.n_colleges);
  for (int s = 0; s < config.n_students; ++s) {
    Substream rng(key.seed, key.trial, Purpose::kTaste, s);
    for (int c = 0; c < config.n_colleges; ++c) {
      const double taste = rng.uniform(0.0, 100.0);
      value[c] = config.beta * config.reputations[c] + (1.0 - config.beta) * taste;
    }
    auto& list = prefs[s];
    list.resize(config.n_colleges);
    std::iota(list.begin(), list.end(), 0);
    std::stable_sort(list.begin(), list.end(), [&](int a, int b) { return value[a] > value[b]; });
  }
  return prefs;
}

std::vector<double> gen_scores(const GenConfig& config, TrialKey key) {
  std::vector<double> scores(config.n_students);
  for (int s = 0; s < config.n_students; ++s) {
    scores[s] = Substream(key.seed, key.trial, Purpose::kScore, s).uniform(0.0, config.f_max);
  }
  return scores;
}

std::vector<double> gen_alphas(const GenConfig& config, TrialKey key) {
  std::vector<double> alphas(config.n_colleges);
  for (int c = 0; c < config.n_colleges; ++c) {
    Substream rng(key.seed, key.trial, Purpose::kAlpha, c);
    switch (config.alpha.kind) {
      case AlphaDistribution::Kind::kBernoulliHalf:
        alphas[c] = (rng() >> 63) ? 1.0 : 0.0;
        break;
      case AlphaDistribution::Kind::kUniform:
        alphas[c] = rng.uniform(config.alpha.lo, config.alpha.hi);
        break;
      case AlphaDistribution::Kind::kConstant:
        alphas[c] = config.alpha.lo;
        break;
    }
  }
  return alphas;
}

PreferenceList reputation_order(const GenConfig& config) {
  PreferenceList order(config.n_colleges);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return config.reputations[a] > config.reputations[b];
  });
  return order;
}

Instance gen_instance(const GenConfig& config, TrialKey key) {
  config.check();
  Instance inst;
  inst.f_max = config.f_max;
  const auto scores = gen_scores(config, key);
  const auto alphas = gen_alphas(config, key);
  for (int s = 0; s < config.n_students; ++s) {
    inst.students.push_back({"s" + std::to_string(s + 1), scores[s]});
  }
  for (int c = 0; c < config.n_colleges; ++c) {
    inst.colleges.push_back(
        {"c" + std::to_string(c + 1), config.quota, alphas[c], linear_bonus(config.n_colleges)});
  }
  inst.student_prefs = gen_student_prefs(config, key);
  return inst;
}

}  // namespace rmatch
