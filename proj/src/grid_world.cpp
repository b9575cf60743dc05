#include "replaylab/grid_world.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace replaylab {

namespace {

constexpr Cell kMoves[kGridActionCount] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};

std::vector<std::string_view> split_rows(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(begin, end - begin);
    while (!row.empty() && (row.back() == '\r' || row.back() == ' ' || row.back() == '\t'))
      row.remove_suffix(1);
    rows.push_back(row);
    begin = end + 1;
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  return rows;
}

}  // namespace

std::size_t GridWorldSpec::wall_count() const {
  return static_cast<std::size_t>(std::count(walls.begin(), walls.end(), true));
}

GridWorldSpec parse_grid_map(std::string_view text) {
  const auto rows = split_rows(text);
  if (rows.empty() || rows.front().empty()) throw MapError("malformed map");

  GridWorldSpec spec;
  spec.height = static_cast<int>(rows.size());
  spec.width = static_cast<int>(rows.front().size());
  spec.walls.assign(spec.cell_count(), false);

  int starts = 0;
  int goals = 0;
  for (int r = 0; r < spec.height; ++r) {
    const auto row = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(row.size()) != spec.width) throw MapError("non-rectangular map");
    for (int c = 0; c < spec.width; ++c) {
      const Cell cell{r, c};
      switch (row[static_cast<std::size_t>(c)]) {
        case '#': spec.walls[spec.index_of(cell)] = true; break;
        case 'S': spec.start = cell; ++starts; break;
        case 'G': spec.goal = cell; ++goals; break;
        case '.': break;
        default: throw MapError("malformed map");
      }
    }
  }
  if (starts != 1 || goals != 1) throw MapError("malformed map");
  if (grid_distance_to_goal(spec)[spec.index_of(spec.start)] < 0)
    throw MapError("goal unreachable");
  return spec;
}

GridWorldSpec load_grid_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_grid_map(text.str());
}

StepResult<Cell> grid_step(const GridWorldSpec& spec, Cell pos, GridAction action) {
  const Cell delta = kMoves[static_cast<std::size_t>(action)];
  Cell next{pos.row + delta.row, pos.col + delta.col};
  if (!spec.in_bounds(next) || spec.is_wall(next)) next = pos;
  return {next, -1.0, next == spec.goal, false};
}

std::vector<int> grid_distance_to_goal(const GridWorldSpec& spec) {
  // Moves are reversible, so BFS outward from the goal gives distance-to-goal.
  std::vector<int> dist(spec.cell_count(), -1);
  std::deque<Cell> frontier{spec.goal};
  dist[spec.index_of(spec.goal)] = 0;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    for (const Cell d : kMoves) {
      const Cell n{c.row + d.row, c.col + d.col};
      if (!spec.in_bounds(n) || spec.is_wall(n) || dist[spec.index_of(n)] >= 0) continue;
      dist[spec.index_of(n)] = dist[spec.index_of(c)] + 1;
      frontier.push_back(n);
    }
  }
  return dist;
}

std::size_t grid_optimal_steps(const GridWorldSpec& spec) {
  const int d = grid_distance_to_goal(spec)[spec.index_of(spec.start)];
  if (d < 0) throw MapError("goal unreachable");
  return static_cast<std::size_t>(d);
}

}  // namespace replaylab
