#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace rmatch {

// Counter-based substreams. A stream is identified by (seed, trial, purpose,
// entity); draw k of a stream is a pure function of that key and k, so results
// never depend on which thread produced them or in which order.

enum class Purpose : std::uint64_t {
  kScore = 1,
  kTaste = 2,
  kAlpha = 3,
  kLottery = 4,
  kStrategicPick = 5,
  kProbeTrial = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ splitmix64(v));
}

/// FNV-1a; used to key lottery draws by agent id strings.
constexpr std::uint64_t hash_id(std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : id) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Substream {
 public:
  using result_type = std::uint64_t;

  constexpr Substream(std::uint64_t seed, std::uint64_t trial, Purpose purpose,
                      std::uint64_t entity)
      : key_(combine(combine(combine(splitmix64(seed), trial),
                             static_cast<std::uint64_t>(purpose)),
                     entity)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n), n >= 1 (Lemire's multiply-shift, no rejection:
  /// bias is below 2^-40 for the small n used here).
  constexpr std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rmatch
