// replaylab command-line front end: run, sweep, prob, oracle.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "replaylab/config.hpp"
#include "replaylab/csv.hpp"
#include "replaylab/experiment.hpp"
#include "replaylab/grid_world.hpp"
#include "replaylab/replay_latency.hpp"

namespace fs = std::filesystem;
using namespace replaylab;

namespace {

constexpr int kOk = 0;
constexpr int kUsageOrConfig = 1;
constexpr int kIo = 2;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::vector<ExperimentConfig> load_with_env(const fs::path& path, const std::string& checkpoint_dir) {
  auto configs = load_config(path);
  if (!checkpoint_dir.empty()) {
    ensure_dir(checkpoint_dir);
    for (auto& c : configs) c.checkpoint_dir = checkpoint_dir;
  }
  if (const char* env = std::getenv("REPLAYLAB_SEED")) {
    std::int64_t seed = 0;
    try {
      std::size_t used = 0;
      seed = std::stoll(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("REPLAYLAB_SEED is not an integer: ") + env);
    }
    for (auto& c : configs) c.base_seed = seed;
  }
  return configs;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

/// Runs each config and writes the long-format run table plus the aggregate.
void run_all(const std::vector<ExperimentConfig>& configs, const fs::path& runs_path,
             const fs::path& aggregate_path, std::size_t jobs) {
  // Validate every experiment before spending time on any of them.
  for (const auto& c : configs) {
    c.validate();
    if (c.task == TaskKind::GridWorld) load_grid_map(c.map_path);
  }
  auto runs_out = open_out(runs_path);
  auto agg_out = open_out(aggregate_path);
  bool header = true;
  for (const auto& c : configs) {
    std::cerr << "running " << c.id << " (" << to_string(c.algorithm) << ", "
              << to_string(c.representation) << ", buffer " << c.buffer_capacity << ", " << c.runs
              << " runs x " << c.episodes << " episodes)\n";
    const auto records = run_experiment(c, jobs);
    write_runs_csv(runs_out, to_rows(c, records), header);
    write_aggregate_csv(agg_out, c, aggregate(records), header);
    header = false;
  }
  close_out(runs_out, runs_path);
  close_out(agg_out, aggregate_path);
  std::cout << "runs=" << runs_path.string() << "\naggregate=" << aggregate_path.string() << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v <= 0) throw ConfigError("invalid buffer size '" + item + "'");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw ConfigError("--buffer-sizes needs at least one positive integer");
  return sizes;
}

template <class F>
int guarded(F&& body) {
  try {
    body();
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageOrConfig;
  } catch (const MapError& e) {
    std::cerr << "map error: " << e.what() << '\n';
    return kUsageOrConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageOrConfig;
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"replaylab: Q-learning experience replay experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "results";
  std::string checkpoint_dir;
  std::size_t jobs = 1;

  auto* run = app.add_subcommand("run", "Run every experiment in a config file");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--out", out_dir, "Output directory (created if absent)");
  run->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  run->add_option("--checkpoint-dir", checkpoint_dir, "Write final network weights of mlp runs here");

  std::string sizes_list;
  auto* sweep = app.add_subcommand("sweep", "Re-run each experiment across buffer capacities");
  sweep->add_option("--config", config_path, "Experiment config file")->required();
  sweep->add_option("--buffer-sizes", sizes_list, "Comma-separated capacities")->required();
  sweep->add_option("--out", out_dir, "Output directory (created if absent)");
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--checkpoint-dir", checkpoint_dir, "Write final network weights of mlp runs here");

  std::uint64_t m = 0;
  std::uint64_t k = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  auto* prob = app.add_subcommand("prob", "Probability that a new transition is replayed within k steps");
  prob->add_option("--m", m, "Buffer size")->required()->check(CLI::PositiveNumber);
  prob->add_option("--k", k, "Window length in steps")->required()->check(CLI::PositiveNumber);
  prob->add_option("--monte-carlo", trials, "Also estimate by simulation with this many trials")
      ->check(CLI::PositiveNumber);
  prob->add_option("--seed", seed, "Seed for the simulation");

  std::string map_path;
  auto* oracle = app.add_subcommand("oracle", "Shortest-path optimum of a grid map");
  oracle->add_option("--map", map_path, "Grid map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageOrConfig;
  }

  if (*run) {
    return guarded([&] {
      const auto configs = load_with_env(config_path, checkpoint_dir);
      ensure_dir(out_dir);
      run_all(configs, fs::path(out_dir) / "runs.csv", fs::path(out_dir) / "aggregate.csv", jobs);
    });
  }

  if (*sweep) {
    return guarded([&] {
      const auto sizes = parse_sizes(sizes_list);
      const auto base = load_with_env(config_path, checkpoint_dir);
      std::vector<ExperimentConfig> expanded;
      for (const auto& c : base) {
        for (const auto size : sizes) {
          auto copy = c;
          copy.buffer_capacity = size;
          copy.id = c.id + "_m" + std::to_string(size);
          expanded.push_back(copy);
        }
      }
      ensure_dir(out_dir);
      run_all(expanded, fs::path(out_dir) / "sweep.csv", fs::path(out_dir) / "sweep_aggregate.csv", jobs);
    });
  }

  if (*prob) {
    return guarded([&] {
      if (k > m) std::cerr << "warning: k > m; the formula assumes k <= m\n";
      const double analytic = replay_within_prob(m, k);
      std::printf("analytic=%.10f\n", analytic);
      if (trials > 0) {
        if (k > m) throw std::invalid_argument("--monte-carlo requires k <= m");
        Rng rng(seed);
        const auto est = replay_within_monte_carlo(m, k, trials, rng);
        const double z = est.stderr_ > 0.0 ? (est.estimate - analytic) / est.stderr_
                                          : (est.estimate == analytic ? 0.0 : INFINITY);
        std::printf("monte_carlo=%.10f stderr=%.10f z=%.4f\n", est.estimate, est.stderr_, z);
      }
    });
  }

  if (*oracle) {
    return guarded([&] {
      const auto spec = load_grid_map(map_path);
      const auto steps = grid_optimal_steps(spec);
      std::cout << "optimal_steps=" << steps << " optimal_return=-" << steps << '\n';
    });
  }
  return kUsageOrConfig;
}
