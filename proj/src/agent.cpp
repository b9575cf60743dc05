#include "replaylab/agent.hpp"

#include <string>

namespace replaylab {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Online: return "online";
    case Algorithm::Buffer: return "buffer";
    case Algorithm::Combined: return "combined";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "online") return Algorithm::Online;
  if (name == "buffer") return Algorithm::Buffer;
  if (name == "combined") return Algorithm::Combined;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected online, buffer or combined)");
}

std::size_t AgentConfig::effective_warmup() const {
  if (warmup) return *warmup;
  switch (algorithm) {
    case Algorithm::Online: return 0;
    case Algorithm::Buffer: return batch_size;
    case Algorithm::Combined: return std::max<std::size_t>(1, batch_size - 1);
  }
  return batch_size;
}

void AgentConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  if (batch_size == 0) throw std::invalid_argument("batch_size must be positive");
  if (algorithm != Algorithm::Online && buffer_capacity == 0)
    throw std::invalid_argument("buffer_capacity must be positive");
  if (warmup && *warmup == 0) throw std::invalid_argument("warmup must be at least 1");
}

std::size_t epsilon_greedy(const Eigen::Ref<const Eigen::VectorXd>& q_values, double epsilon, Rng& rng) {
  const auto n = static_cast<std::size_t>(q_values.size());
  if (n == 0) throw std::invalid_argument("epsilon_greedy needs at least one action value");
  if (epsilon > 0.0 && rng.bernoulli(epsilon)) return rng.uniform_index(n);

  const double best = q_values.maxCoeff();
  std::size_t ties = 0;
  for (std::size_t a = 0; a < n; ++a) ties += q_values(static_cast<Eigen::Index>(a)) == best;
  std::size_t pick = ties > 1 ? rng.uniform_index(ties) : 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (q_values(static_cast<Eigen::Index>(a)) != best) continue;
    if (pick-- == 0) return a;
  }
  return n - 1;
}

}  // namespace replaylab
