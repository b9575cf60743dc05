#include "replaylab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace replaylab {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  if (!value.empty() && value.front() == '-')
    throw ConfigError("key '" + std::string(key) + "' must be non-negative");
  return parse_number<std::size_t>(key, value);
}

}  // namespace

std::string_view to_string(TaskKind t) {
  return t == TaskKind::GridWorld ? "grid_world" : "mountain_car";
}

std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::Tabular: return "tabular";
    case Representation::TileLinear: return "tile_linear";
    case Representation::Mlp: return "mlp";
  }
  return "unknown";
}

TaskKind parse_task(std::string_view name) {
  if (name == "grid_world") return TaskKind::GridWorld;
  if (name == "mountain_car") return TaskKind::MountainCar;
  throw ConfigError("unknown task '" + std::string(name) + "' (expected grid_world or mountain_car)");
}

Representation parse_representation(std::string_view name) {
  if (name == "tabular") return Representation::Tabular;
  if (name == "tile_linear") return Representation::TileLinear;
  if (name == "mlp") return Representation::Mlp;
  throw ConfigError("unknown representation '" + std::string(name) +
                    "' (expected tabular, tile_linear or mlp)");
}

std::size_t ExperimentConfig::resolved_timeout() const {
  if (timeout) return *timeout;
  return task == TaskKind::GridWorld ? 5000 : 1000;
}

double ExperimentConfig::resolved_learning_rate() const {
  if (learning_rate) return *learning_rate;
  switch (representation) {
    case Representation::Tabular: return 0.1;
    case Representation::TileLinear: return 0.1;
    case Representation::Mlp: return task == TaskKind::GridWorld ? 0.01 : 0.0005;
  }
  return 0.1;
}

std::size_t ExperimentConfig::resolved_hidden_units() const {
  if (hidden_units) return *hidden_units;
  return task == TaskKind::GridWorld ? 50 : 100;
}

AgentConfig ExperimentConfig::agent_config() const {
  return {algorithm, epsilon, batch_size, buffer_capacity, warmup};
}

void ExperimentConfig::validate() const {
  if (representation == Representation::Tabular && task != TaskKind::GridWorld)
    throw ConfigError("experiment '" + id +
                      "': tabular representation is only compatible with the grid_world task");
  if (representation == Representation::TileLinear && task != TaskKind::MountainCar)
    throw ConfigError("experiment '" + id +
                      "': tile_linear representation is only compatible with a continuous-state "
                      "task (mountain_car)");
  if (episodes == 0) throw ConfigError("experiment '" + id + "': episodes must be positive");
  if (runs == 0) throw ConfigError("experiment '" + id + "': runs must be positive");
  if (resolved_timeout() == 0) throw ConfigError("experiment '" + id + "': timeout must be positive");
  if (buffer_capacity == 0) throw ConfigError("experiment '" + id + "': buffer_capacity must be positive");
  if (batch_size == 0) throw ConfigError("experiment '" + id + "': batch_size must be positive");
  if (warmup && *warmup == 0) throw ConfigError("experiment '" + id + "': warmup must be at least 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw ConfigError("experiment '" + id + "': epsilon must lie in [0, 1]");
  if (!(resolved_learning_rate() > 0.0))
    throw ConfigError("experiment '" + id + "': learning_rate must be positive");
  if (num_tilings < 1 || iht_size == 0 || !(tiles_per_dimension > 0.0))
    throw ConfigError("experiment '" + id + "': invalid tile coding settings");
  if (resolved_hidden_units() == 0 || sync_interval == 0)
    throw ConfigError("experiment '" + id + "': invalid network settings");
}

void apply_config_key(ExperimentConfig& cfg, std::string_view key, std::string_view value,
                      const std::filesystem::path& base_dir) {
  try {
    if (key == "id") cfg.id = std::string(value);
    else if (key == "task") cfg.task = parse_task(value);
    else if (key == "map") {
      std::filesystem::path p{std::string(value)};
      cfg.map_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    else if (key == "timeout") cfg.timeout = parse_count(key, value);
    else if (key == "representation") cfg.representation = parse_representation(value);
    else if (key == "algorithm") cfg.algorithm = parse_algorithm(value);
    else if (key == "buffer_capacity") cfg.buffer_capacity = parse_count(key, value);
    else if (key == "episodes") cfg.episodes = parse_count(key, value);
    else if (key == "runs") cfg.runs = parse_count(key, value);
    else if (key == "base_seed") cfg.base_seed = parse_number<std::int64_t>(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_number<double>(key, value);
    else if (key == "batch_size") cfg.batch_size = parse_count(key, value);
    else if (key == "warmup") cfg.warmup = parse_count(key, value);
    else if (key == "learning_rate") cfg.learning_rate = parse_number<double>(key, value);
    else if (key == "discount") cfg.discount = parse_number<double>(key, value);
    else if (key == "num_tilings") cfg.num_tilings = parse_number<int>(key, value);
    else if (key == "iht_size") cfg.iht_size = parse_count(key, value);
    else if (key == "tiles_per_dimension") cfg.tiles_per_dimension = parse_number<double>(key, value);
    else if (key == "hidden_units") cfg.hidden_units = parse_count(key, value);
    else if (key == "rmsprop_rho") cfg.rmsprop_rho = parse_number<double>(key, value);
    else if (key == "rmsprop_eps") cfg.rmsprop_eps = parse_number<double>(key, value);
    else if (key == "sync_interval") cfg.sync_interval = parse_count(key, value);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<ExperimentConfig> parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig defaults;
  std::vector<ExperimentConfig> out;
  ExperimentConfig* current = &defaults;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where() + "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(where() + "empty section name");
      out.push_back(defaults);
      out.back().id = std::string(name);
      current = &out.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + "expected key = value");
    try {
      apply_config_key(*current, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    }
  }
  if (out.empty()) out.push_back(defaults);
  for (const auto& cfg : out) cfg.validate();
  return out;
}

std::vector<ExperimentConfig> load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

}  // namespace replaylab
