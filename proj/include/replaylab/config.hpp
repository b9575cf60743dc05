#ifndef REPLAYLAB_CONFIG_HPP
#define REPLAYLAB_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "replaylab/agent.hpp"

namespace replaylab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TaskKind { GridWorld, MountainCar };
enum class Representation { Tabular, TileLinear, Mlp };

std::string_view to_string(TaskKind t);
std::string_view to_string(Representation r);
TaskKind parse_task(std::string_view name);
Representation parse_representation(std::string_view name);

/// Everything needed to reproduce one experiment. Unset optionals take
/// task- or representation-dependent defaults via resolved().
struct ExperimentConfig {
  std::string id = "experiment";
  TaskKind task = TaskKind::GridWorld;
  std::filesystem::path map_path = "data/maps/default.map";
  std::optional<std::size_t> timeout;  // 5000 grid world, 1000 mountain car
  Representation representation = Representation::Tabular;
  Algorithm algorithm = Algorithm::Online;
  std::size_t buffer_capacity = 10000;
  std::size_t episodes = 1000;
  std::size_t runs = 30;
  std::int64_t base_seed = 0;

  double epsilon = 0.1;
  std::size_t batch_size = 10;
  std::optional<std::size_t> warmup;

  // 0.1 tabular, 0.1 (split over tilings) tile_linear, 0.01 / 0.0005 mlp.
  std::optional<double> learning_rate;
  double discount = 1.0;

  int num_tilings = 8;
  std::size_t iht_size = 4096;
  double tiles_per_dimension = 8.0;

  std::optional<std::size_t> hidden_units;  // 50 grid world, 100 mountain car
  double rmsprop_rho = 0.99;
  double rmsprop_eps = 1e-8;
  std::size_t sync_interval = 200;

  /// When set, each network run writes its final online weights here as
  /// <id>_run<k>.txt. Not a config-file key.
  std::filesystem::path checkpoint_dir;

  [[nodiscard]] std::size_t resolved_timeout() const;
  [[nodiscard]] double resolved_learning_rate() const;
  [[nodiscard]] std::size_t resolved_hidden_units() const;
  [[nodiscard]] AgentConfig agent_config() const;

  /// Throws ConfigError on invalid pairings or out-of-range values.
  void validate() const;
};

/// Parses the sectioned key=value format. Keys before the first [section]
/// are defaults for every section; relative map paths resolve against
/// `base_dir`. Returns one config per section, in file order.
std::vector<ExperimentConfig> parse_config(std::string_view text,
                                           const std::filesystem::path& base_dir = {});
std::vector<ExperimentConfig> load_config(const std::filesystem::path& path);

/// Applies a single key=value assignment; throws ConfigError for unknown keys
/// or unparsable values.
void apply_config_key(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                      const std::filesystem::path& base_dir = {});

}  // namespace replaylab

#endif  // REPLAYLAB_CONFIG_HPP
