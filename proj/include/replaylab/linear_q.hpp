#ifndef REPLAYLAB_LINEAR_Q_HPP
#define REPLAYLAB_LINEAR_Q_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "replaylab/action_value.hpp"
#include "replaylab/tile_coding.hpp"
#include "replaylab/transition.hpp"

namespace replaylab {

struct TileCodingSettings {
  int num_tilings = 8;
  std::size_t iht_size = 4096;
  /// Step size for the whole estimate; each active weight moves by
  /// base_rate / num_tilings times the TD error.
  double base_rate = 0.1;
  double discount = 1.0;
};

/// Linear Q over binary tile features. The action index is appended to the
/// tile coordinates, so all actions share one weight vector and one hash table.
///
/// `Scale` maps a State to pre-scaled coordinates (a contiguous range of double).
/// Reading values inserts unseen tiles into the hash table, so lookups are
/// non-const.
template <class State, class Scale>
class TileCodedQ {
 public:
  TileCodedQ(std::size_t action_count, Scale scale, TileCodingSettings settings = {})
      : iht_(settings.iht_size),
        weights_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(settings.iht_size))),
        scale_(scale),
        settings_(settings),
        action_count_(action_count) {}

  /// Active tile indices for (s, a).
  void active_tiles(const State& s, std::size_t a, std::vector<std::size_t>& out) {
    const auto coords = scale_(s);
    const std::int64_t action = static_cast<std::int64_t>(a);
    tiles_into(iht_, settings_.num_tilings, std::span<const double>(coords),
               std::span<const std::int64_t>(&action, 1), out);
  }

  std::vector<std::size_t> active_tiles(const State& s, std::size_t a) {
    std::vector<std::size_t> out;
    active_tiles(s, a, out);
    return out;
  }

  double value(const State& s, std::size_t a) {
    active_tiles(s, a, scratch_);
    return sum_weights(scratch_);
  }

  Eigen::VectorXd values(const State& s) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(action_count_));
    for (std::size_t a = 0; a < action_count_; ++a) out(static_cast<Eigen::Index>(a)) = value(s, a);
    return out;
  }

  double max_value(const State& s) {
    double best = value(s, 0);
    for (std::size_t a = 1; a < action_count_; ++a) best = std::max(best, value(s, a));
    return best;
  }

  double td_error(const Transition<State>& t) {
    const double next_max = t.terminal ? 0.0 : max_value(t.next_state);
    return q_learning_target(t.reward, t.terminal, settings_.discount, next_max) -
           value(t.state, t.action);
  }

  void update(const Transition<State>& t) {
    const double delta = td_error(t);
    active_tiles(t.state, t.action, scratch_);
    const double step = per_weight_rate() * delta;
    for (const auto i : scratch_) weights_(static_cast<Eigen::Index>(i)) += step;
  }

  void update(std::span<const Transition<State>> batch) {
    for (const auto& t : batch) update(t);
  }

  [[nodiscard]] double per_weight_rate() const noexcept {
    return settings_.base_rate / settings_.num_tilings;
  }
  [[nodiscard]] std::size_t action_count() const noexcept { return action_count_; }
  [[nodiscard]] const IndexHashTable& hash_table() const noexcept { return iht_; }
  [[nodiscard]] std::uint64_t overflow_count() const noexcept { return iht_.overflow_count(); }
  [[nodiscard]] const TileCodingSettings& settings() const noexcept { return settings_; }
  [[nodiscard]] Eigen::VectorXd& weights() noexcept { return weights_; }
  [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return weights_; }

 private:
  double sum_weights(const std::vector<std::size_t>& idx) const {
    double total = 0.0;
    for (const auto i : idx) total += weights_(static_cast<Eigen::Index>(i));
    return total;
  }

  IndexHashTable iht_;
  Eigen::VectorXd weights_;
  Scale scale_;
  TileCodingSettings settings_;
  std::size_t action_count_;
  std::vector<std::size_t> scratch_;
};

template <class State, class Scale>
Eigen::VectorXd linear_q_values(TileCodedQ<State, Scale>& q, const State& s) {
  return q.values(s);
}

template <class State, class Scale>
void linear_update(TileCodedQ<State, Scale>& q, const Transition<State>& t) {
  q.update(t);
}

}  // namespace replaylab

#endif  // REPLAYLAB_LINEAR_Q_HPP
