#include "replaylab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "replaylab/agent.hpp"
#include "replaylab/csv.hpp"
#include "replaylab/features.hpp"
#include "replaylab/grid_world.hpp"
#include "replaylab/linear_q.hpp"
#include "replaylab/mlp.hpp"
#include "replaylab/mountain_car.hpp"
#include "replaylab/tabular_q.hpp"
#include "replaylab/time_limit.hpp"

namespace replaylab {

namespace {

template <class Q>
std::uint64_t overflow_of(const Q&) {
  return 0;
}
template <class State, class Scale>
std::uint64_t overflow_of(const TileCodedQ<State, Scale>& q) {
  return q.overflow_count();
}

template <class Q>
void write_final_weights(const Q&, const std::filesystem::path&) {}
template <class Scalar, class State, class Encoder>
void write_final_weights(const MlpQ<Scalar, State, Encoder>& q, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  write_checkpoint(out, q.online());
  out.close();
  if (!out) throw IoError("cannot write checkpoint " + path.string());
}

template <class Env, class Q>
RunRecord drive(const ExperimentConfig& cfg, std::size_t run_index, Env env, Q q, const Rng& root) {
  Agent<Env, Q> agent(cfg.agent_config(), std::move(env), std::move(q), root.split(streams::kPolicy),
                      root.split(streams::kReplay));
  RunRecord record;
  record.run_id = run_index;
  record.seed = run_seed(cfg, run_index);
  record.per_episode.reserve(cfg.episodes);
  for (std::size_t e = 0; e < cfg.episodes; ++e) {
    const EpisodeResult r = agent.run_episode();
    record.per_episode.push_back({e, r.episode_return, r.steps});
    record.diagnostics.timeouts += r.timed_out ? 1 : 0;
  }
  const auto& stats = agent.stats();
  record.diagnostics.env_steps = stats.env_steps;
  record.diagnostics.update_calls = stats.update_calls;
  record.diagnostics.transitions_used = stats.transitions_used;
  if (agent.buffer()) {
    record.diagnostics.buffer_inserts = agent.buffer()->insert_count();
    record.diagnostics.evictions = agent.buffer()->evictions();
  }
  record.diagnostics.tile_overflow = overflow_of(agent.q());
  if (!cfg.checkpoint_dir.empty())
    write_final_weights(agent.q(), cfg.checkpoint_dir / (cfg.id + "_run" + std::to_string(run_index) + ".txt"));
  return record;
}

MlpSettings mlp_settings(const ExperimentConfig& cfg) {
  MlpSettings s;
  s.hidden_units = cfg.resolved_hidden_units();
  s.optimizer = {cfg.resolved_learning_rate(), cfg.rmsprop_rho, cfg.rmsprop_eps};
  s.discount = cfg.discount;
  s.sync_interval = cfg.sync_interval;
  return s;
}

RunRecord run_with_map(const ExperimentConfig& cfg, std::size_t run_index,
                       const std::optional<GridWorldSpec>& map) {
  const Rng root(static_cast<std::uint64_t>(run_seed(cfg, run_index)));
  const std::size_t timeout = cfg.resolved_timeout();

  if (cfg.task == TaskKind::GridWorld) {
    const GridWorldSpec& spec = *map;
    TimeLimit<GridWorld> env(GridWorld(spec), timeout);
    if (cfg.representation == Representation::Tabular) {
      TabularQ<Cell, GridCellIndex> q(spec.cell_count(), kGridActionCount, GridCellIndex{spec.width},
                                      {cfg.resolved_learning_rate(), cfg.discount});
      return drive(cfg, run_index, std::move(env), std::move(q), root);
    }
    Rng init = root.split(streams::kInit);
    MlpQ<double, Cell, GridOneHot> q(kGridActionCount, GridOneHot{spec.width, spec.height},
                                     mlp_settings(cfg), init);
    return drive(cfg, run_index, std::move(env), std::move(q), root);
  }

  TimeLimit<MountainCar> env(MountainCar(root.split(streams::kEnvironment)), timeout);
  if (cfg.representation == Representation::TileLinear) {
    TileCodedQ<MountainCarState, MountainCarTileScale> q(
        mountain_car::kActionCount, MountainCarTileScale{cfg.tiles_per_dimension},
        {cfg.num_tilings, cfg.iht_size, cfg.resolved_learning_rate(), cfg.discount});
    return drive(cfg, run_index, std::move(env), std::move(q), root);
  }
  Rng init = root.split(streams::kInit);
  MlpQ<double, MountainCarState, MountainCarNormalizer> q(mountain_car::kActionCount,
                                                          MountainCarNormalizer{}, mlp_settings(cfg), init);
  return drive(cfg, run_index, std::move(env), std::move(q), root);
}

std::optional<GridWorldSpec> load_task_map(const ExperimentConfig& cfg) {
  if (cfg.task != TaskKind::GridWorld) return std::nullopt;
  return load_grid_map(cfg.map_path);
}

}  // namespace

std::int64_t run_seed(const ExperimentConfig& cfg, std::size_t run_index) {
  return cfg.base_seed + static_cast<std::int64_t>(run_index);
}

RunRecord run_single(const ExperimentConfig& cfg, std::size_t run_index) {
  cfg.validate();
  return run_with_map(cfg, run_index, load_task_map(cfg));
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::size_t jobs) {
  cfg.validate();
  const auto map = load_task_map(cfg);

  std::vector<RunRecord> records(cfg.runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.runs; i = next++) {
      try {
        records[i] = run_with_map(cfg, i, map);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, cfg.runs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

AggregateCurve aggregate(const std::vector<RunRecord>& records,
                         const std::function<double(const EpisodeRecord&)>& value) {
  if (records.empty()) throw std::invalid_argument("aggregate needs at least one run");
  const std::size_t episodes = records.front().per_episode.size();
  for (const auto& r : records)
    if (r.per_episode.size() != episodes) throw std::invalid_argument("runs have mismatched episode counts");

  const auto n = static_cast<double>(records.size());
  AggregateCurve curve(episodes);
  for (std::size_t e = 0; e < episodes; ++e) {
    double sum = 0.0;
    for (const auto& r : records) sum += value(r.per_episode[e]);
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& r : records) {
      const double d = value(r.per_episode[e]) - mean;
      sq += d * d;
    }
    const double se = records.size() > 1 ? std::sqrt(sq / (n - 1.0)) / std::sqrt(n) : 0.0;
    curve[e] = {records.front().per_episode[e].episode, mean, se, records.size()};
  }
  return curve;
}

AggregateCurve aggregate(const std::vector<RunRecord>& records) {
  return aggregate(records, [](const EpisodeRecord& e) { return e.episode_return; });
}

AggregateCurve smooth(const AggregateCurve& curve, std::size_t window) {
  if (window == 0) throw std::invalid_argument("smoothing window must be positive");
  if (window == 1) return curve;
  AggregateCurve out(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
    double mean_sum = 0.0;
    double se_sum = 0.0;
    for (std::size_t j = first; j <= i; ++j) {
      mean_sum += curve[j].mean;
      se_sum += curve[j].stderr_;
    }
    const auto span = static_cast<double>(i + 1 - first);
    out[i] = {curve[i].episode, mean_sum / span, se_sum / span, curve[i].runs};
  }
  return out;
}

}  // namespace replaylab
