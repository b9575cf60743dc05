#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "replaylab/agent.hpp"
#include "replaylab/features.hpp"
#include "replaylab/grid_world.hpp"
#include "replaylab/tabular_q.hpp"
#include "replaylab/time_limit.hpp"

#ifndef REPLAYLAB_DEFAULT_MAP
#error "REPLAYLAB_DEFAULT_MAP must point at the shipped map"
#endif

using namespace replaylab;

namespace {

using Env = TimeLimit<GridWorld>;
using Table = TabularQ<Cell, GridCellIndex>;
using GridAgent = Agent<Env, Table>;
using Batch = std::vector<Transition<Cell>>;

Table fresh_table(const GridWorldSpec& spec) {
  return Table(spec.cell_count(), kGridActionCount, GridCellIndex{spec.width});
}

GridAgent make_agent(const GridWorldSpec& spec, AgentConfig config, std::uint64_t seed,
                     std::size_t limit = 5000) {
  const Rng root(seed);
  return GridAgent(config, Env(GridWorld(spec), limit), fresh_table(spec), root.split(streams::kPolicy),
                   root.split(streams::kReplay));
}

AgentConfig config_for(Algorithm a) {
  AgentConfig c;
  c.algorithm = a;
  return c;
}

// Binomial standard error of a frequency estimate.
double binomial_se(double p, int n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

TEST_CASE("epsilon_greedy") {
  Rng rng(1);
  SUBCASE("pure argmax") {
    const Eigen::Vector3d v(1.0, 3.0, 2.0);
    for (int i = 0; i < 100; ++i) CHECK(epsilon_greedy(v, 0.0, rng) == 1);
  }
  SUBCASE("epsilon 1 is uniform") {
    const Eigen::Vector4d v(0.0, 10.0, -3.0, 2.0);
    const int n = 100000;
    std::array<int, 4> counts{};
    for (int i = 0; i < n; ++i) ++counts[epsilon_greedy(v, 1.0, rng)];
    for (const int c : counts) CHECK(std::abs(c / double(n) - 0.25) <= 3.0 * binomial_se(0.25, n));
  }
  SUBCASE("ties are broken uniformly") {
    const Eigen::Vector3d v(5.0, 5.0, 1.0);
    const int n = 10000;
    std::array<int, 3> counts{};
    for (int i = 0; i < n; ++i) ++counts[epsilon_greedy(v, 0.0, rng)];
    CHECK(std::abs(counts[0] / double(n) - 0.5) <= 3.0 * binomial_se(0.5, n));
    CHECK(std::abs(counts[1] / double(n) - 0.5) <= 3.0 * binomial_se(0.5, n));
    CHECK(counts[2] == 0);
  }
  SUBCASE("positive scaling leaves choices unchanged") {
    Rng a(4);
    Rng b(4);
    Rng values(5);
    for (int i = 0; i < 2000; ++i) {
      Eigen::Vector4d v;
      // Coarse values so that ties happen often.
      for (int j = 0; j < 4; ++j) v(j) = static_cast<double>(values.uniform_index(3));
      REQUIRE(epsilon_greedy(v, 0.1, a) == epsilon_greedy(v * 3.7, 0.1, b));
    }
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(epsilon_greedy(Eigen::VectorXd(0), 0.1, rng), std::invalid_argument);
  }
}

TEST_CASE("agent config validation and warmup defaults") {
  AgentConfig c;
  c.algorithm = Algorithm::Buffer;
  CHECK(c.effective_warmup() == 10);
  c.algorithm = Algorithm::Combined;
  CHECK(c.effective_warmup() == 9);
  c.batch_size = 1;
  CHECK(c.effective_warmup() == 1);
  c.warmup = 0;
  CHECK_THROWS(c.validate());
  c.warmup = 3;
  CHECK(c.effective_warmup() == 3);
  c.epsilon = 1.5;
  CHECK_THROWS(c.validate());
  CHECK(parse_algorithm("combined") == Algorithm::Combined);
  CHECK(to_string(Algorithm::Buffer) == "buffer");
  CHECK_THROWS(parse_algorithm("dqn"));
}

TEST_CASE("online step") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  SUBCASE("one step changes exactly one entry to -0.1") {
    auto agent = make_agent(spec, config_for(Algorithm::Online), 1);
    agent.step();
    const auto& table = agent.q().table();
    CHECK((table.array() != 0.0).count() == 1);
    CHECK(table.minCoeff() == doctest::Approx(-0.1));
    CHECK_FALSE(agent.buffer().has_value());
  }
  SUBCASE("one update per environment step") {
    auto agent = make_agent(spec, config_for(Algorithm::Online), 2);
    for (int e = 0; e < 5; ++e) agent.run_episode();
    CHECK(agent.stats().update_calls == agent.stats().env_steps);
    CHECK(agent.stats().transitions_used == agent.stats().env_steps);
  }
}

TEST_CASE("timeouts keep bootstrapping") {
  const auto spec = parse_grid_map("S....\n.....\n....G\n");
  auto agent = make_agent(spec, config_for(Algorithm::Online), 3, 1);
  // Every value starts at -0.5 so the bootstrap term is visible.
  for (int r = 0; r < spec.height; ++r)
    for (int c = 0; c < spec.width; ++c)
      for (std::size_t a = 0; a < kGridActionCount; ++a)
        agent.q().update(Transition<Cell>{{r, c}, a, -5.0, {r, c}, true});
  Batch seen;
  agent.set_batch_observer([&](std::span<const Transition<Cell>> b, bool) { seen.assign(b.begin(), b.end()); });
  const auto out = agent.step();
  CHECK(out.timed_out);
  CHECK_FALSE(out.transition.terminal);
  REQUIRE(seen.size() == 1);
  CHECK_FALSE(seen[0].terminal);
  // -0.5 + 0.1 * (-1 + (-0.5) - (-0.5)); a terminal target would give -0.55.
  CHECK(agent.q().value(out.transition.state, out.transition.action) == doctest::Approx(-0.6));
  CHECK_FALSE(agent.in_episode());
}

TEST_CASE("buffer step") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  auto agent = make_agent(spec, config_for(Algorithm::Buffer), 4);
  std::vector<std::size_t> batch_sizes;
  std::vector<bool> latest_flags;
  agent.set_batch_observer([&](std::span<const Transition<Cell>> b, bool latest) {
    batch_sizes.push_back(b.size());
    latest_flags.push_back(latest);
  });
  for (int i = 0; i < 9; ++i) agent.step();
  CHECK(agent.stats().update_calls == 0);
  CHECK(agent.buffer()->size() == 9);
  CHECK(agent.q().table().isZero(0.0));
  for (int i = 0; i < 200; ++i) agent.step();
  CHECK(agent.stats().update_calls == 200);
  CHECK(agent.stats().transitions_used == 2000);
  for (const auto n : batch_sizes) CHECK(n == 10);
  for (const bool f : latest_flags) CHECK_FALSE(f);
}

TEST_CASE("combined step pins the fresh transition last") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  auto agent = make_agent(spec, config_for(Algorithm::Combined), 5);
  Batch last;
  bool latest = false;
  agent.set_batch_observer([&](std::span<const Transition<Cell>> b, bool l) {
    last.assign(b.begin(), b.end());
    latest = l;
  });
  for (int i = 0; i < 8; ++i) agent.step();
  CHECK(agent.stats().update_calls == 0);
  for (int i = 0; i < 300; ++i) {
    const auto out = agent.step();
    REQUIRE(last.size() == 10);
    CHECK(last.back() == out.transition);
    CHECK(latest);
  }
}

TEST_CASE("a huge buffer never evicts") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  AgentConfig c = config_for(Algorithm::Buffer);
  c.buffer_capacity = 10'000'000;
  auto agent = make_agent(spec, c, 6);
  for (int e = 0; e < 20; ++e) agent.run_episode();
  CHECK(agent.buffer()->evictions() == 0);
  CHECK(agent.buffer()->insert_count() == agent.stats().env_steps);
  CHECK(agent.buffer()->size() == agent.stats().env_steps);
}

TEST_CASE("episodes") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  SUBCASE("return is minus the step count and bounded by the limit") {
    AgentConfig c = config_for(Algorithm::Online);
    c.epsilon = 1.0;
    auto agent = make_agent(spec, c, 7, 50);
    for (int e = 0; e < 20; ++e) {
      const auto r = agent.run_episode();
      CHECK(r.episode_return == -static_cast<double>(r.steps));
      CHECK(r.steps <= 50);
      CHECK(r.timed_out == (r.steps == 50));
    }
  }
  SUBCASE("greedy run on converged values is optimal") {
    // Synchronous Q-learning sweeps over the known model reach Q*.
    Table q = fresh_table(spec);
    for (int sweep = 0; sweep < 3000; ++sweep)
      for (int r = 0; r < spec.height; ++r)
        for (int col = 0; col < spec.width; ++col) {
          const Cell s{r, col};
          if (spec.is_wall(s) || s == spec.goal) continue;
          for (std::size_t a = 0; a < kGridActionCount; ++a) {
            const auto step = grid_step(spec, s, static_cast<GridAction>(a));
            q.update(Transition<Cell>{s, a, step.reward, step.next_state, step.terminal});
          }
        }
    CHECK(q.values(spec.start).maxCoeff() == doctest::Approx(-double(grid_optimal_steps(spec))).epsilon(1e-6));
    AgentConfig c = config_for(Algorithm::Online);
    c.epsilon = 0.0;
    const Rng root(8);
    GridAgent agent(c, Env(GridWorld(spec), 5000), q, root.split(streams::kPolicy), root.split(streams::kReplay));
    for (int e = 0; e < 5; ++e) CHECK(agent.run_episode().steps == grid_optimal_steps(spec));
  }
}

TEST_CASE("combined with batch size 1 is online learning") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  AgentConfig combined = config_for(Algorithm::Combined);
  combined.batch_size = 1;
  auto a = make_agent(spec, config_for(Algorithm::Online), 9);
  auto b = make_agent(spec, combined, 9);
  for (int e = 0; e < 30; ++e) {
    const auto ra = a.run_episode();
    const auto rb = b.run_episode();
    REQUIRE(ra.steps == rb.steps);
  }
  CHECK(a.q().table() == b.q().table());
}

TEST_CASE("same seed, same trajectory") {
  const auto spec = load_grid_map(REPLAYLAB_DEFAULT_MAP);
  for (const auto alg : {Algorithm::Online, Algorithm::Buffer, Algorithm::Combined}) {
    auto a = make_agent(spec, config_for(alg), 10);
    auto b = make_agent(spec, config_for(alg), 10);
    for (int e = 0; e < 20; ++e) REQUIRE(a.run_episode().episode_return == b.run_episode().episode_return);
    CHECK(a.q().table() == b.q().table());
  }
}
