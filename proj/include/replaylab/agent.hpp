#ifndef REPLAYLAB_AGENT_HPP
#define REPLAYLAB_AGENT_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "replaylab/action_value.hpp"
#include "replaylab/replay_buffer.hpp"
#include "replaylab/rng.hpp"
#include "replaylab/step_result.hpp"
#include "replaylab/transition.hpp"

namespace replaylab {

enum class Algorithm { Online, Buffer, Combined };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct AgentConfig {
  Algorithm algorithm = Algorithm::Online;
  double epsilon = 0.1;
  std::size_t batch_size = 10;
  std::size_t buffer_capacity = 10000;
  /// Minimum buffer length before sampled updates start. Defaults to
  /// batch_size (Buffer-Q) or max(1, batch_size - 1) (Combined-Q).
  std::optional<std::size_t> warmup;

  [[nodiscard]] std::size_t effective_warmup() const;
  void validate() const;
};

/// With probability epsilon a uniformly random action, otherwise a greedy
/// action with ties broken uniformly at random.
std::size_t epsilon_greedy(const Eigen::Ref<const Eigen::VectorXd>& q_values, double epsilon, Rng& rng);

struct AgentStats {
  std::uint64_t env_steps = 0;
  std::uint64_t update_calls = 0;
  std::uint64_t transitions_used = 0;
};

struct EpisodeResult {
  double episode_return = 0.0;
  std::size_t steps = 0;
  bool timed_out = false;
};

/// Q-learning driver for the online, buffered and combined replay variants.
///
/// Per step: act, store (replay variants only), update if the warmup gate is
/// open, then advance S <- S'. A step that hits the time limit stores a
/// transition with terminal == false.
template <Environment Env, class Q>
  requires ActionValueFunction<Q, typename Env::State>
class Agent {
 public:
  using State = typename Env::State;
  using BatchObserver = std::function<void(std::span<const Transition<State>>, bool contains_latest)>;

  struct StepOutcome {
    Transition<State> transition;
    bool timed_out = false;
  };

  Agent(AgentConfig config, Env env, Q q, Rng policy_rng, Rng replay_rng)
      : config_(config),
        env_(std::move(env)),
        q_(std::move(q)),
        policy_rng_(policy_rng),
        replay_rng_(replay_rng) {
    config_.validate();
    if (config_.algorithm != Algorithm::Online) buffer_.emplace(config_.buffer_capacity);
    batch_.transitions.reserve(config_.batch_size);
  }

  void begin_episode() {
    state_ = env_.reset();
    in_episode_ = true;
  }

  StepOutcome online_step() {
    auto out = act();
    apply(std::span<const Transition<State>>(&out.transition, 1), true);
    advance(out);
    return out;
  }

  StepOutcome buffer_step() {
    auto out = act();
    buffer_->push(out.transition);
    if (buffer_->size() >= config_.effective_warmup()) {
      batch_.transitions.clear();
      batch_.contains_latest = false;
      sample_uniform_into(*buffer_, config_.batch_size, replay_rng_, batch_.transitions);
      apply(batch_.transitions, false);
    }
    advance(out);
    return out;
  }

  StepOutcome combined_step() {
    auto out = act();
    buffer_->push(out.transition);
    if (buffer_->size() >= config_.effective_warmup()) {
      combined_batch_into(*buffer_, out.transition, config_.batch_size, replay_rng_, batch_);
      apply(batch_.transitions, true);
    }
    advance(out);
    return out;
  }

  StepOutcome step() {
    if (!in_episode_) begin_episode();
    switch (config_.algorithm) {
      case Algorithm::Online: return online_step();
      case Algorithm::Buffer: return buffer_step();
      case Algorithm::Combined: return combined_step();
    }
    throw std::logic_error("unknown algorithm");
  }

  EpisodeResult run_episode() {
    begin_episode();
    EpisodeResult result;
    while (in_episode_) {
      const auto out = step();
      result.episode_return += out.transition.reward;
      ++result.steps;
      result.timed_out = out.timed_out;
    }
    return result;
  }

  void set_batch_observer(BatchObserver observer) { observer_ = std::move(observer); }

  [[nodiscard]] const AgentConfig& config() const noexcept { return config_; }
  [[nodiscard]] const AgentStats& stats() const noexcept { return stats_; }
  [[nodiscard]] Q& q() noexcept { return q_; }
  [[nodiscard]] const Q& q() const noexcept { return q_; }
  [[nodiscard]] Env& env() noexcept { return env_; }
  [[nodiscard]] const std::optional<ReplayBuffer<State>>& buffer() const noexcept { return buffer_; }
  [[nodiscard]] const State& state() const noexcept { return state_; }
  [[nodiscard]] bool in_episode() const noexcept { return in_episode_; }

 private:
  StepOutcome act() {
    if (!in_episode_) begin_episode();
    const Eigen::VectorXd values = q_.values(state_);
    const std::size_t action = epsilon_greedy(values, config_.epsilon, policy_rng_);
    const StepResult<State> r = env_.step(action);
    ++stats_.env_steps;
    return {{state_, action, r.reward, r.next_state, r.terminal}, r.timed_out};
  }

  void apply(std::span<const Transition<State>> batch, bool contains_latest) {
    if (observer_) observer_(batch, contains_latest);
    q_.update(batch);
    ++stats_.update_calls;
    stats_.transitions_used += batch.size();
  }

  void advance(const StepOutcome& out) {
    state_ = out.transition.next_state;
    if (out.transition.terminal || out.timed_out) in_episode_ = false;
  }

  AgentConfig config_;
  Env env_;
  Q q_;
  Rng policy_rng_;
  Rng replay_rng_;
  std::optional<ReplayBuffer<State>> buffer_;
  SampleBatch<State> batch_;
  State state_{};
  bool in_episode_ = false;
  AgentStats stats_;
  BatchObserver observer_;
};

}  // namespace replaylab

#endif  // REPLAYLAB_AGENT_HPP
