#ifndef REPLAYLAB_STEP_RESULT_HPP
#define REPLAYLAB_STEP_RESULT_HPP

#include <concepts>
#include <cstddef>

namespace replaylab {

/// Outcome of one environment step. terminal and timed_out are never both set.
template <class State>
struct StepResult {
  State next_state{};
  double reward = 0.0;
  bool terminal = false;
  bool timed_out = false;

  [[nodiscard]] bool episode_over() const noexcept { return terminal || timed_out; }
};

/// Episodic task with a discrete action set.
template <class E>
concept Environment = requires(E env, const E cenv, std::size_t a) {
  typename E::State;
  { env.reset() } -> std::same_as<typename E::State>;
  { env.step(a) } -> std::same_as<StepResult<typename E::State>>;
  { cenv.action_count() } -> std::convertible_to<std::size_t>;
};

}  // namespace replaylab

#endif  // REPLAYLAB_STEP_RESULT_HPP
