#ifndef REPLAYLAB_FEATURES_HPP
#define REPLAYLAB_FEATURES_HPP

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "replaylab/grid_world.hpp"
#include "replaylab/mountain_car.hpp"

namespace replaylab {

/// Row-major one-hot position vector of length width * height.
/// Throws std::out_of_range for cells outside the grid.
Eigen::VectorXd one_hot_encode(Cell cell, int width, int height);

/// Row-major cell id, for tables.
struct GridCellIndex {
  int width = 1;
  std::size_t operator()(Cell c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.col);
  }
};

struct GridOneHot {
  int width = 1;
  int height = 1;
  [[nodiscard]] std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  template <class Scalar>
  void encode(Cell c, Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) const {
    out.setZero();
    out(static_cast<Eigen::Index>(GridCellIndex{width}(c))) = Scalar(1);
  }
};

/// Scales position and velocity so each range spans `tiles_per_dimension` units.
struct MountainCarTileScale {
  double tiles_per_dimension = 8.0;
  std::array<double, 2> operator()(const MountainCarState& s) const noexcept;
};

/// Position and velocity mapped linearly onto [-1, 1].
struct MountainCarNormalizer {
  [[nodiscard]] static constexpr std::size_t dimension() noexcept { return 2; }
  template <class Scalar>
  void encode(const MountainCarState& s, Eigen::Ref<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> out) const {
    using namespace mountain_car;
    out(0) = Scalar(2.0 * (s.position - kMinPosition) / (kMaxPosition - kMinPosition) - 1.0);
    out(1) = Scalar(s.velocity / kMaxSpeed);
  }
};

}  // namespace replaylab

#endif  // REPLAYLAB_FEATURES_HPP
