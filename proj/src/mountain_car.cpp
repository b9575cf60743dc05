#include "replaylab/mountain_car.hpp"

#include <algorithm>
#include <cmath>

namespace replaylab {

StepResult<MountainCarState> mountain_car_step(MountainCarState state, std::size_t action) {
  using namespace mountain_car;
  const double thrust = static_cast<double>(action) - 1.0;
  double velocity = state.velocity + 0.001 * thrust - 0.0025 * std::cos(3.0 * state.position);
  velocity = std::clamp(velocity, -kMaxSpeed, kMaxSpeed);
  double position = std::clamp(state.position + velocity, kMinPosition, kMaxPosition);
  if (position <= kMinPosition) velocity = 0.0;
  return {{position, velocity}, -1.0, position >= kGoalPosition, false};
}

}  // namespace replaylab
