#include "replaylab/features.hpp"

#include <stdexcept>

namespace replaylab {

Eigen::VectorXd one_hot_encode(Cell cell, int width, int height) {
  if (cell.row < 0 || cell.row >= height || cell.col < 0 || cell.col >= width)
    throw std::out_of_range("cell outside grid");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(width) * height);
  v(static_cast<Eigen::Index>(GridCellIndex{width}(cell))) = 1.0;
  return v;
}

std::array<double, 2> MountainCarTileScale::operator()(const MountainCarState& s) const noexcept {
  using namespace mountain_car;
  return {(s.position - kMinPosition) / (kMaxPosition - kMinPosition) * tiles_per_dimension,
          (s.velocity + kMaxSpeed) / (2.0 * kMaxSpeed) * tiles_per_dimension};
}

}  // namespace replaylab
