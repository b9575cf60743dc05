#ifndef REPLAYLAB_TIME_LIMIT_HPP
#define REPLAYLAB_TIME_LIMIT_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "replaylab/step_result.hpp"

namespace replaylab {

/// Caps episode length. The step that reaches `limit` without terminating is
/// flagged timed_out with terminal == false, so learners keep bootstrapping
/// from its next state. A genuine termination on that same step wins.
template <Environment Env>
class TimeLimit {
 public:
  using State = typename Env::State;

  TimeLimit(Env env, std::size_t limit) : env_(std::move(env)), limit_(limit) {
    if (limit == 0) throw std::invalid_argument("timeout must be at least one step");
  }

  State reset() {
    elapsed_ = 0;
    return env_.reset();
  }

  StepResult<State> step(std::size_t action) {
    StepResult<State> result = env_.step(action);
    ++elapsed_;
    result.timed_out = !result.terminal && elapsed_ >= limit_;
    return result;
  }

  [[nodiscard]] std::size_t action_count() const { return env_.action_count(); }
  [[nodiscard]] std::size_t limit() const noexcept { return limit_; }
  [[nodiscard]] std::size_t elapsed() const noexcept { return elapsed_; }
  [[nodiscard]] const Env& inner() const noexcept { return env_; }
  [[nodiscard]] Env& inner() noexcept { return env_; }

 private:
  Env env_;
  std::size_t limit_;
  std::size_t elapsed_ = 0;
};

}  // namespace replaylab

#endif  // REPLAYLAB_TIME_LIMIT_HPP
