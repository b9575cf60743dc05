#ifndef REPLAYLAB_TRANSITION_HPP
#define REPLAYLAB_TRANSITION_HPP

#include <cstddef>
#include <vector>

namespace replaylab {

/// One experienced step (s, a, r, s').
///
/// `terminal` is set only on genuine termination. A step cut short by a time
/// limit keeps terminal == false so the learning target still bootstraps from
/// next_state.
template <class State>
struct Transition {
  State state{};
  std::size_t action = 0;
  double reward = 0.0;
  State next_state{};
  bool terminal = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

template <class State>
struct SampleBatch {
  std::vector<Transition<State>> transitions;
  bool contains_latest = false;

  [[nodiscard]] std::size_t size() const noexcept { return transitions.size(); }
  [[nodiscard]] bool empty() const noexcept { return transitions.empty(); }
  const Transition<State>& operator[](std::size_t i) const { return transitions[i]; }
};

}  // namespace replaylab

#endif  // REPLAYLAB_TRANSITION_HPP
