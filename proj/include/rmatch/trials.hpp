#pragma once

#include <cmath>
#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include <omp.h>

namespace rmatch {

// Trial kernels. Each trial is a pure function of its index, so the parallel
// kernel must produce exactly the serial reference's vector; aggregation
// always runs afterwards in trial-index order.

enum class Execution { kSerial, kParallel };

template <class Fn>
auto run_trials_serial(std::size_t count, Fn&& fn) {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) out.push_back(fn(t));
  return out;
}

template <class Fn>
auto run_trials_parallel(std::size_t count, Fn&& fn) {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(count);
  std::exception_ptr error;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long t = 0; t < n; ++t) {
    try {
      out[t] = fn(static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(rmatch_trial_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

template <class Fn>
auto run_trials(Execution exec, std::size_t count, Fn&& fn) {
  return exec == Execution::kParallel ? run_trials_parallel(count, fn)
                                      : run_trials_serial(count, fn);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

/// Sample mean and its standard error, summed in index order.
inline MeanSe summarize(std::span<const double> xs) {
  MeanSe out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return out;
}

}  // namespace rmatch
