#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "replaylab/replay_buffer.hpp"
#include "replaylab/replay_latency.hpp"

using namespace replaylab;

namespace {

using T = Transition<int>;

T make(int id) { return {id, static_cast<std::size_t>(id % 4), -1.0, id + 1, false}; }

}  // namespace

TEST_CASE("push into an empty buffer") {
  ReplayBuffer<int> buffer(2);
  buffer.push(make(1));
  CHECK(buffer.size() == 1);
  CHECK(buffer[0] == make(1));
}

TEST_CASE("push into a full buffer evicts the oldest") {
  ReplayBuffer<int> buffer(2);
  buffer.push(make(1));
  buffer.push(make(2));
  buffer.push(make(3));
  CHECK(buffer.to_vector() == std::vector<T>{make(2), make(3)});
  CHECK(buffer.evictions() == 1);
}

TEST_CASE("150 pushes into capacity 100 keep pushes 51..150") {
  ReplayBuffer<int> buffer(100);
  std::vector<T> naive;
  for (int i = 1; i <= 150; ++i) {
    buffer.push(make(i));
    naive.push_back(make(i));
  }
  naive.erase(naive.begin(), naive.end() - 100);
  CHECK(buffer.size() == 100);
  CHECK(buffer[0].state == 51);
  CHECK(buffer.to_vector() == naive);
  CHECK(buffer.insert_count() == 150);
}

TEST_CASE("FIFO law against an unbounded list on random push sequences") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t capacity = 1 + rng.uniform_index(20);
    const std::size_t pushes = rng.uniform_index(80);
    ReplayBuffer<int> buffer(capacity);
    std::vector<T> all;
    for (std::size_t i = 0; i < pushes; ++i) {
      const T t = make(static_cast<int>(rng.uniform_index(1000)));
      buffer.push(t);
      all.push_back(t);
      REQUIRE(buffer.size() <= capacity);
    }
    const std::size_t keep = std::min(pushes, capacity);
    const std::vector<T> expected(all.end() - static_cast<std::ptrdiff_t>(keep), all.end());
    CHECK(buffer.to_vector() == expected);
    CHECK(buffer.size() == keep);
  }
}

TEST_CASE("zero capacity is rejected") {
  CHECK_THROWS_AS(ReplayBuffer<int>(0), std::invalid_argument);
}

TEST_CASE("uniform sampling") {
  SUBCASE("single resident transition") {
    ReplayBuffer<int> buffer(5);
    buffer.push(make(7));
    Rng rng(1);
    const auto batch = sample_uniform(buffer, 3, rng);
    CHECK(batch.transitions == std::vector<T>{make(7), make(7), make(7)});
    CHECK_FALSE(batch.contains_latest);
  }
  SUBCASE("identical rng state gives identical batches") {
    ReplayBuffer<int> buffer(50);
    for (int i = 0; i < 50; ++i) buffer.push(make(i));
    Rng a(99);
    Rng b(99);
    CHECK(sample_uniform(buffer, 32, a).transitions == sample_uniform(buffer, 32, b).transitions);
  }
  SUBCASE("empty buffer") {
    ReplayBuffer<int> buffer(5);
    Rng rng(1);
    CHECK_THROWS_WITH_AS(sample_uniform(buffer, 1, rng), "empty buffer", std::invalid_argument);
  }
}

TEST_CASE("uniform sampling passes a chi-square test at significance 0.001") {
  ReplayBuffer<int> buffer(10);
  for (int i = 0; i < 10; ++i) buffer.push(make(i));
  Rng rng(2024);
  const int draws = 100000;
  const auto batch = sample_uniform(buffer, draws, rng);
  std::vector<int> counts(10, 0);
  for (const auto& t : batch.transitions) ++counts[static_cast<std::size_t>(t.state)];
  const double expected = draws / 10.0;
  double chi2 = 0.0;
  for (const int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // Upper 0.001 quantile of chi-square with 9 degrees of freedom.
  CHECK(chi2 < 27.877164871256568);
}

TEST_CASE("combined batch") {
  ReplayBuffer<int> buffer(100);
  for (int i = 0; i < 40; ++i) buffer.push(make(i));
  const T latest = make(40);
  buffer.push(latest);
  Rng rng(5);

  SUBCASE("final slot is the latest transition") {
    const auto batch = combined_batch(buffer, latest, 10, rng);
    REQUIRE(batch.size() == 10);
    CHECK(batch[9] == latest);
    CHECK(batch.contains_latest);
  }
  SUBCASE("n = 1 draws nothing") {
    Rng before = rng;
    const auto batch = combined_batch(buffer, latest, 1, rng);
    CHECK(batch.transitions == std::vector<T>{latest});
    CHECK(rng.next_u64() == before.next_u64());
  }
  SUBCASE("n = 0 is an error") {
    CHECK_THROWS_WITH_AS(combined_batch(buffer, latest, 0, rng), "empty batch request",
                         std::invalid_argument);
  }
}

TEST_CASE("combined batch from a buffer holding only the latest transition") {
  ReplayBuffer<int> buffer(10);
  const T latest = make(3);
  buffer.push(latest);
  Rng rng(8);
  const auto batch = combined_batch(buffer, latest, 10, rng);
  CHECK(batch.transitions == std::vector<T>(10, latest));
}

TEST_CASE("combined-batch law over random buffer states") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    ReplayBuffer<int> buffer(1 + rng.uniform_index(30));
    const std::size_t pushes = 1 + rng.uniform_index(60);
    T latest;
    for (std::size_t i = 0; i < pushes; ++i) {
      latest = make(static_cast<int>(i));
      buffer.push(latest);
    }
    const std::size_t n = 1 + rng.uniform_index(16);
    const auto batch = combined_batch(buffer, latest, n, rng);
    REQUIRE(batch.size() == n);
    CHECK(batch.transitions.back() == latest);
  }
}

TEST_CASE("replay_within_prob") {
  CHECK(replay_within_prob(1, 1) == 1.0);
  CHECK(replay_within_prob(100, 100) == doctest::Approx(0.6339676587267709).epsilon(1e-14));
  CHECK(replay_within_prob(10, 5) > replay_within_prob(100, 5));
  CHECK_THROWS_WITH_AS(replay_within_prob(0, 3), "empty buffer has no replay probability",
                       std::invalid_argument);
}

TEST_CASE("replay_within_prob monotonicity") {
  for (std::uint64_t k = 1; k <= 50; k += 7)
    for (std::uint64_t m = 1; m < 500; m += 13) CHECK(replay_within_prob(m, k) > replay_within_prob(m + 1, k));
  // Within the formula's domain k <= m; beyond ~53 halvings double rounds to 1.
  for (std::uint64_t m = 2; m <= 200; m += 11)
    for (std::uint64_t k = 1; k < m; k += 3) CHECK(replay_within_prob(m, k) < replay_within_prob(m, k + 1));
}

TEST_CASE("Monte Carlo replay latency") {
  SUBCASE("m = 1, k = 1 is certain") {
    Rng rng(3);
    const auto est = replay_within_monte_carlo(1, 1, 1000, rng);
    CHECK(est.estimate == 1.0);
    CHECK(est.stderr_ == 0.0);
  }
  SUBCASE("single uniform draw from 100") {
    Rng rng(4);
    const auto est = replay_within_monte_carlo(100, 1, 100000, rng);
    CHECK(std::abs(est.estimate - 0.01) <= 3.0 * est.stderr_);
  }
  SUBCASE("agreement with the analytic value") {
    const std::pair<std::uint64_t, std::uint64_t> cases[] = {{10, 5}, {100, 10}, {100, 100}};
    Rng rng(11);
    for (const auto& [m, k] : cases) {
      const auto est = replay_within_monte_carlo(m, k, 100000, rng);
      CAPTURE(m);
      CAPTURE(k);
      CHECK(std::abs(est.estimate - replay_within_prob(m, k)) <= 3.0 * est.stderr_);
    }
  }
  SUBCASE("window longer than the buffer is rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(replay_within_monte_carlo(5, 6, 10, rng), std::invalid_argument);
  }
}

TEST_CASE("rng streams are reproducible and distinct") {
  const Rng root(42);
  Rng a = root.split(1);
  Rng b = root.split(1);
  Rng c = root.split(2);
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.uniform_index(7) < 7);
    const double u = r.uniform01();
    CHECK((u >= 0.0 && u < 1.0));
  }
}
