#ifndef REPLAYLAB_REPLAY_LATENCY_HPP
#define REPLAYLAB_REPLAY_LATENCY_HPP

#include <cstdint>

#include "replaylab/rng.hpp"

namespace replaylab {

/// Probability that a transition entering a full buffer of size m is drawn at
/// least once in the next k single-sample steps: 1 - (1 - 1/m)^k.
double replay_within_prob(std::uint64_t m, std::uint64_t k);

struct ProbabilityEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Simulates the single-sample scenario directly: a full FIFO buffer of size m
/// receives a marked transition, then one uniform index is drawn per step for
/// k steps. Requires k <= m so the marked slot is never evicted in the window.
ProbabilityEstimate replay_within_monte_carlo(std::uint64_t m, std::uint64_t k,
                                              std::uint64_t trials, Rng& rng);

}  // namespace replaylab

#endif  // REPLAYLAB_REPLAY_LATENCY_HPP
