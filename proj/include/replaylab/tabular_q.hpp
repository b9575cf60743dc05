#ifndef REPLAYLAB_TABULAR_Q_HPP
#define REPLAYLAB_TABULAR_Q_HPP

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "replaylab/action_value.hpp"
#include "replaylab/transition.hpp"

namespace replaylab {

struct TabularSettings {
  double learning_rate = 0.1;
  double discount = 1.0;
};

/// Look-up table Q(s, a), every entry starting at exactly 0. Under rewards of
/// -1 per step that start is optimistic.
///
/// `Index` maps a State to a row in [0, state_count).
template <class State, class Index>
class TabularQ {
 public:
  TabularQ(std::size_t state_count, std::size_t action_count, Index index,
           TabularSettings settings = {})
      : table_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(state_count),
                                     static_cast<Eigen::Index>(action_count))),
        index_(index),
        settings_(settings) {}

  [[nodiscard]] auto values(const State& s) const { return table_.row(row(s)).transpose(); }
  [[nodiscard]] double value(const State& s, std::size_t a) const {
    return table_(row(s), static_cast<Eigen::Index>(a));
  }

  [[nodiscard]] double target(const Transition<State>& t) const {
    const double next_max = t.terminal ? 0.0 : table_.row(row(t.next_state)).maxCoeff();
    return q_learning_target(t.reward, t.terminal, settings_.discount, next_max);
  }

  void update(const Transition<State>& t) {
    double& entry = table_(row(t.state), static_cast<Eigen::Index>(t.action));
    entry += settings_.learning_rate * (target(t) - entry);
  }

  /// Applies the scalar rule to each transition in order.
  void update(std::span<const Transition<State>> batch) {
    for (const auto& t : batch) update(t);
  }

  [[nodiscard]] std::size_t action_count() const noexcept {
    return static_cast<std::size_t>(table_.cols());
  }
  [[nodiscard]] std::size_t state_count() const noexcept {
    return static_cast<std::size_t>(table_.rows());
  }
  [[nodiscard]] const Eigen::MatrixXd& table() const noexcept { return table_; }
  [[nodiscard]] const TabularSettings& settings() const noexcept { return settings_; }

 private:
  [[nodiscard]] Eigen::Index row(const State& s) const { return static_cast<Eigen::Index>(index_(s)); }

  Eigen::MatrixXd table_;
  Index index_;
  TabularSettings settings_;
};

template <class State, class Index>
auto tabular_q_values(const TabularQ<State, Index>& q, const State& s) {
  return Eigen::VectorXd(q.values(s));
}

template <class State, class Index>
void tabular_update(TabularQ<State, Index>& q, const Transition<State>& t) {
  q.update(t);
}

}  // namespace replaylab

#endif  // REPLAYLAB_TABULAR_Q_HPP
