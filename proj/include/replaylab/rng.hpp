#ifndef REPLAYLAB_RNG_HPP
#define REPLAYLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace replaylab {

/// SplitMix64 finalizer. Used to derive well-separated seeds for child streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Reproducible pseudorandom stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard library distributions are not (their algorithms are
/// implementation-defined), so the mapping from raw 64-bit words to indices and
/// reals is done here: indices use Lemire's multiply-shift with rejection,
/// reals take the top 53 bits. Given the same seed, every platform produces
/// the same draws.
///
/// Streams are split by hashing (seed, stream id) through SplitMix64, so each
/// consumer in a run (policy, sampler, initializer) gets its own sequence.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(splitmix64(seed)) {}

  [[nodiscard]] Rng split(std::uint64_t stream_id) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)));
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform real in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // UniformRandomBitGenerator, so the engine can be handed to std algorithms
  // whose output does not need to be portable.
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Fixed stream ids within one run.
namespace streams {
inline constexpr std::uint64_t kPolicy = 1;
inline constexpr std::uint64_t kReplay = 2;
inline constexpr std::uint64_t kInit = 3;
inline constexpr std::uint64_t kEnvironment = 4;
}  // namespace streams

}  // namespace replaylab

#endif  // REPLAYLAB_RNG_HPP
