#ifndef REPLAYLAB_ACTION_VALUE_HPP
#define REPLAYLAB_ACTION_VALUE_HPP

#include <concepts>
#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "replaylab/transition.hpp"

namespace replaylab {

/// A learnable action-value representation over states of type State.
/// `update` consumes one training batch; a single fresh transition is a
/// batch of one.
template <class Q, class State>
concept ActionValueFunction =
    requires(Q q, const Q cq, const State& s, std::span<const Transition<State>> batch) {
      { q.values(s) } -> std::convertible_to<Eigen::VectorXd>;
      { q.update(batch) };
      { cq.action_count() } -> std::convertible_to<std::size_t>;
    };

/// Q-learning target: r, or r + discount * max_a' Q(s', a') when not terminal.
inline double q_learning_target(double reward, bool terminal, double discount, double next_max) {
  return terminal ? reward : reward + discount * next_max;
}

}  // namespace replaylab

#endif  // REPLAYLAB_ACTION_VALUE_HPP
