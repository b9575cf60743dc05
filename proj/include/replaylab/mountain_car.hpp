#ifndef REPLAYLAB_MOUNTAIN_CAR_HPP
#define REPLAYLAB_MOUNTAIN_CAR_HPP

#include <cstddef>

#include "replaylab/rng.hpp"
#include "replaylab/step_result.hpp"

namespace replaylab {

struct MountainCarState {
  double position = -0.5;
  double velocity = 0.0;
  friend bool operator==(const MountainCarState&, const MountainCarState&) = default;
};

namespace mountain_car {
inline constexpr double kMinPosition = -1.2;
inline constexpr double kMaxPosition = 0.6;
inline constexpr double kMaxSpeed = 0.07;
inline constexpr double kGoalPosition = 0.5;
inline constexpr std::size_t kActionCount = 3;  // reverse, coast, forward
}  // namespace mountain_car

/// Classic underpowered-car dynamics. Action index 0/1/2 applies thrust -1/0/+1.
StepResult<MountainCarState> mountain_car_step(MountainCarState state, std::size_t action);

/// Episodes start at rest with position uniform in [-0.6, -0.4).
class MountainCar {
 public:
  using State = MountainCarState;

  explicit MountainCar(Rng rng) : rng_(rng) {}

  MountainCarState reset() {
    state_ = {rng_.uniform(-0.6, -0.4), 0.0};
    return state_;
  }

  StepResult<MountainCarState> step(std::size_t action) {
    auto result = mountain_car_step(state_, action);
    state_ = result.next_state;
    return result;
  }

  [[nodiscard]] std::size_t action_count() const noexcept { return mountain_car::kActionCount; }
  [[nodiscard]] MountainCarState state() const noexcept { return state_; }

 private:
  Rng rng_;
  MountainCarState state_;
};

}  // namespace replaylab

#endif  // REPLAYLAB_MOUNTAIN_CAR_HPP
