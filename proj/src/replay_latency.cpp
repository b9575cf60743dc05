#include "replaylab/replay_latency.hpp"

#include <cmath>
#include <stdexcept>

#include "replaylab/replay_buffer.hpp"

namespace replaylab {

double replay_within_prob(std::uint64_t m, std::uint64_t k) {
  if (m == 0) throw std::invalid_argument("empty buffer has no replay probability");
  if (k == 0) throw std::invalid_argument("replay window must be at least one step");
  return 1.0 - std::pow(1.0 - 1.0 / static_cast<double>(m), static_cast<double>(k));
}

ProbabilityEstimate replay_within_monte_carlo(std::uint64_t m, std::uint64_t k,
                                              std::uint64_t trials, Rng& rng) {
  if (m == 0 || k == 0 || trials == 0)
    throw std::invalid_argument("monte carlo requires m, k, trials >= 1");
  if (k > m) throw std::invalid_argument("monte carlo window requires k <= m");

  // Buffer contents are identified by push number. Each trial pushes a marked
  // transition into the (already full) ring, then draws one index per step;
  // every later step pushes a filler first, as training does.
  ReplayBuffer<std::uint64_t> buffer(m);
  std::uint64_t next_id = 0;
  auto push_next = [&] {
    buffer.push({next_id, 0, 0.0, next_id, false});
    return next_id++;
  };
  while (buffer.size() < m) push_next();

  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t marked = push_next();
    bool drawn = false;
    for (std::uint64_t step = 0; step < k && !drawn; ++step) {
      if (step > 0) push_next();
      drawn = buffer[rng.uniform_index(buffer.size())].state == marked;
    }
    if (drawn) ++hits;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace replaylab
