#ifndef REPLAYLAB_GRID_WORLD_HPP
#define REPLAYLAB_GRID_WORLD_HPP

#include <compare>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "replaylab/step_result.hpp"

namespace replaylab {

struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class GridAction : std::size_t { Left = 0, Right = 1, Up = 2, Down = 3 };
inline constexpr std::size_t kGridActionCount = 4;

class MapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic maze. Walls are stored as a row-major mask.
struct GridWorldSpec {
  int width = 0;
  int height = 0;
  std::vector<bool> walls;
  Cell start;
  Cell goal;

  [[nodiscard]] bool in_bounds(Cell c) const noexcept {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }
  [[nodiscard]] bool is_wall(Cell c) const { return walls[index_of(c)]; }
  [[nodiscard]] std::size_t index_of(Cell c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.col);
  }
  [[nodiscard]] std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  [[nodiscard]] std::size_t wall_count() const;
};

/// Parses rows of '#', 'S', 'G', '.'. Trailing whitespace and a trailing
/// blank line are ignored. Throws MapError.
GridWorldSpec parse_grid_map(std::string_view text);
GridWorldSpec load_grid_map(const std::filesystem::path& path);

StepResult<Cell> grid_step(const GridWorldSpec& spec, Cell pos, GridAction action);

/// Shortest start-to-goal path length under the movement rules.
std::size_t grid_optimal_steps(const GridWorldSpec& spec);

/// Breadth-first distance-to-goal for every cell; -1 for walls and cells that
/// cannot reach the goal.
std::vector<int> grid_distance_to_goal(const GridWorldSpec& spec);

/// Episodic wrapper; every episode starts at spec.start.
class GridWorld {
 public:
  using State = Cell;

  explicit GridWorld(GridWorldSpec spec) : spec_(std::move(spec)), pos_(spec_.start) {}

  Cell reset() { return pos_ = spec_.start; }

  StepResult<Cell> step(std::size_t action) {
    auto result = grid_step(spec_, pos_, static_cast<GridAction>(action));
    pos_ = result.next_state;
    return result;
  }

  [[nodiscard]] std::size_t action_count() const noexcept { return kGridActionCount; }
  [[nodiscard]] const GridWorldSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] Cell position() const noexcept { return pos_; }

 private:
  GridWorldSpec spec_;
  Cell pos_;
};

}  // namespace replaylab

#endif  // REPLAYLAB_GRID_WORLD_HPP
