#ifndef REPLAYLAB_EXPERIMENT_HPP
#define REPLAYLAB_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "replaylab/config.hpp"

namespace replaylab {

struct EpisodeRecord {
  std::size_t episode = 0;
  double episode_return = 0.0;
  std::size_t steps = 0;
  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

/// Counters gathered during a run; not part of the CSV output.
struct RunDiagnostics {
  std::uint64_t env_steps = 0;
  std::uint64_t update_calls = 0;
  std::uint64_t transitions_used = 0;
  std::uint64_t buffer_inserts = 0;
  std::uint64_t evictions = 0;
  std::uint64_t tile_overflow = 0;
  std::uint64_t timeouts = 0;
};

struct RunRecord {
  std::size_t run_id = 0;
  std::int64_t seed = 0;
  std::vector<EpisodeRecord> per_episode;
  RunDiagnostics diagnostics;
};

/// Seed of run i: base_seed + i.
std::int64_t run_seed(const ExperimentConfig& cfg, std::size_t run_index);

/// Executes one fully deterministic run.
RunRecord run_single(const ExperimentConfig& cfg, std::size_t run_index);

/// Runs cfg.runs independent runs on up to `jobs` threads. The result is
/// ordered by run id and does not depend on `jobs`. Validates the config
/// (and loads the map) before any run starts.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::size_t jobs = 1);

struct AggregatePoint {
  std::size_t episode = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t runs = 0;
};

using AggregateCurve = std::vector<AggregatePoint>;

/// Per-episode mean and standard error (sample sd with n-1, divided by
/// sqrt(n)) of `value(record, episode)` across runs. A single run has
/// standard error 0. Throws std::invalid_argument on mismatched lengths.
AggregateCurve aggregate(const std::vector<RunRecord>& records,
                         const std::function<double(const EpisodeRecord&)>& value);

/// Aggregate of episode returns.
AggregateCurve aggregate(const std::vector<RunRecord>& records);

/// Trailing moving average over min(window, episodes so far) points, applied
/// to means and standard errors alike.
AggregateCurve smooth(const AggregateCurve& curve, std::size_t window);

}  // namespace replaylab

#endif  // REPLAYLAB_EXPERIMENT_HPP
