// Test-only finite-difference oracle for the network TD gradient. It
// recomputes the loss with plain loops so it shares no code with the
// library's batched forward/backward pass.
#ifndef REPLAYLAB_TESTS_GRADIENT_ORACLE_HPP
#define REPLAYLAB_TESTS_GRADIENT_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "replaylab/mlp.hpp"

namespace replaylab::testing {

/// States are raw input vectors.
struct IdentityEncoder {
  std::size_t dim = 1;
  [[nodiscard]] std::size_t dimension() const noexcept { return dim; }
  template <class Scalar>
  void encode(const Eigen::VectorXd& s, Eigen::Ref<VectorX<Scalar>> out) const {
    out = s.cast<Scalar>();
  }
};

using VecTransition = Transition<Eigen::VectorXd>;

inline std::vector<double> naive_forward(const MlpParams<double>& p, const Eigen::VectorXd& x) {
  std::vector<double> hidden(static_cast<std::size_t>(p.hidden_dim()));
  for (Eigen::Index h = 0; h < p.hidden_dim(); ++h) {
    double z = p.b1(h);
    for (Eigen::Index i = 0; i < p.input_dim(); ++i) z += p.w1(h, i) * x(i);
    hidden[static_cast<std::size_t>(h)] = z > 0.0 ? z : 0.0;
  }
  std::vector<double> out(static_cast<std::size_t>(p.output_dim()));
  for (Eigen::Index a = 0; a < p.output_dim(); ++a) {
    double q = p.b2(a);
    for (Eigen::Index h = 0; h < p.hidden_dim(); ++h) q += p.w2(a, h) * hidden[static_cast<std::size_t>(h)];
    out[static_cast<std::size_t>(a)] = q;
  }
  return out;
}

/// Smallest |pre-activation| over the batch inputs; finite differences are
/// only valid away from ReLU kinks.
inline double min_abs_preactivation(const MlpParams<double>& p, const std::vector<VecTransition>& batch) {
  double best = INFINITY;
  for (const auto& t : batch) {
    for (Eigen::Index h = 0; h < p.hidden_dim(); ++h) {
      double z = p.b1(h);
      for (Eigen::Index i = 0; i < p.input_dim(); ++i) z += p.w1(h, i) * t.state(i);
      best = std::min(best, std::abs(z));
    }
  }
  return best;
}

/// mean_b (y_b - Q_online(s_b, a_b))^2 with targets from `target`.
inline double naive_td_loss(const MlpParams<double>& online, const MlpParams<double>& target,
                            const std::vector<VecTransition>& batch, double discount) {
  double loss = 0.0;
  for (const auto& t : batch) {
    double y = t.reward;
    if (!t.terminal) {
      const auto next = naive_forward(target, t.next_state);
      y += discount * *std::max_element(next.begin(), next.end());
    }
    const double q = naive_forward(online, t.state)[t.action];
    loss += (y - q) * (y - q);
  }
  return loss / static_cast<double>(batch.size());
}

struct GradientCheck {
  double max_relative_error = 0.0;
  std::size_t parameters = 0;
};

/// Compares `analytic` with central differences of naive_td_loss, step h.
/// Relative error is |g - fd| / max(|g|, |fd|, 1e-6).
inline GradientCheck check_gradient(const MlpParams<double>& online, const MlpParams<double>& target,
                                    const MlpParams<double>& analytic,
                                    const std::vector<VecTransition>& batch, double discount,
                                    double h = 1e-5) {
  GradientCheck result;
  MlpParams<double> probe = online;
  auto visit = [&](auto& tensor, const auto& grad) {
    for (Eigen::Index i = 0; i < tensor.rows(); ++i) {
      for (Eigen::Index j = 0; j < tensor.cols(); ++j) {
        const double saved = tensor(i, j);
        tensor(i, j) = saved + h;
        const double up = naive_td_loss(probe, target, batch, discount);
        tensor(i, j) = saved - h;
        const double down = naive_td_loss(probe, target, batch, discount);
        tensor(i, j) = saved;
        const double fd = (up - down) / (2.0 * h);
        const double g = grad(i, j);
        const double denom = std::max({std::abs(g), std::abs(fd), 1e-6});
        result.max_relative_error = std::max(result.max_relative_error, std::abs(g - fd) / denom);
        ++result.parameters;
      }
    }
  };
  visit(probe.w1, analytic.w1);
  visit(probe.b1, analytic.b1);
  visit(probe.w2, analytic.w2);
  visit(probe.b2, analytic.b2);
  return result;
}

}  // namespace replaylab::testing

#endif  // REPLAYLAB_TESTS_GRADIENT_ORACLE_HPP
