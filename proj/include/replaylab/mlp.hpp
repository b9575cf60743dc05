#ifndef REPLAYLAB_MLP_HPP
#define REPLAYLAB_MLP_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

#include "replaylab/action_value.hpp"
#include "replaylab/rng.hpp"
#include "replaylab/transition.hpp"

namespace replaylab {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Parameters of Q(x) = w2 * relu(w1 * x + b1) + b2. Gradients and optimizer
/// state share this shape.
template <class Scalar>
struct MlpParams {
  MatrixX<Scalar> w1;  // hidden x input
  VectorX<Scalar> b1;  // hidden
  MatrixX<Scalar> w2;  // actions x hidden
  VectorX<Scalar> b2;  // actions

  static MlpParams zeros(Eigen::Index input, Eigen::Index hidden, Eigen::Index outputs) {
    return {MatrixX<Scalar>::Zero(hidden, input), VectorX<Scalar>::Zero(hidden),
            MatrixX<Scalar>::Zero(outputs, hidden), VectorX<Scalar>::Zero(outputs)};
  }

  [[nodiscard]] Eigen::Index input_dim() const { return w1.cols(); }
  [[nodiscard]] Eigen::Index hidden_dim() const { return w1.rows(); }
  [[nodiscard]] Eigen::Index output_dim() const { return w2.rows(); }
  [[nodiscard]] bool same_shape(const MlpParams& o) const {
    return w1.rows() == o.w1.rows() && w1.cols() == o.w1.cols() && b1.size() == o.b1.size() &&
           w2.rows() == o.w2.rows() && w2.cols() == o.w2.cols() && b2.size() == o.b2.size();
  }

  /// Visits (name, tensor) pairs in a fixed order.
  template <class F>
  void for_each(F&& f) {
    f("w1", w1); f("b1", b1); f("w2", w2); f("b2", b2);
  }
  template <class F>
  void for_each(F&& f) const {
    f("w1", w1); f("b1", b1); f("w2", w2); f("b2", b2);
  }
};

/// Uniform in +-sqrt(6 / (fan_in + fan_out)) per layer, zero biases.
template <class Scalar>
void initialize_scaled_uniform(MlpParams<Scalar>& p, Rng& rng) {
  auto fill = [&rng](MatrixX<Scalar>& w) {
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = Scalar(rng.uniform(-limit, limit));
  };
  fill(p.w1);
  fill(p.w2);
  p.b1.setZero();
  p.b2.setZero();
}

template <class Scalar, class Derived>
VectorX<Scalar> mlp_forward(const MlpParams<Scalar>& p, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != p.input_dim()) throw std::invalid_argument("mlp input has wrong dimension");
  return p.w2 * (p.w1 * x + p.b1).cwiseMax(Scalar(0)) + p.b2;
}

/// Column-wise forward pass over a batch of inputs (input x batch).
template <class Scalar>
MatrixX<Scalar> mlp_forward_batch(const MlpParams<Scalar>& p, const MatrixX<Scalar>& x) {
  if (x.rows() != p.input_dim()) throw std::invalid_argument("mlp input has wrong dimension");
  MatrixX<Scalar> out = p.w2 * ((p.w1 * x).colwise() + p.b1).cwiseMax(Scalar(0));
  out.colwise() += p.b2;
  return out;
}

struct RmsPropSettings {
  double learning_rate = 0.01;
  double rho = 0.99;
  double epsilon = 1e-8;
};

/// cache <- rho * cache + (1 - rho) * g^2; param <- param - lr * g / (sqrt(cache) + eps).
template <class P, class C, class G>
void rmsprop_step(Eigen::DenseBase<P>& param, Eigen::DenseBase<C>& cache,
                  const Eigen::DenseBase<G>& grad, const RmsPropSettings& s) {
  using Scalar = typename P::Scalar;
  const auto rho = Scalar(s.rho);
  cache.derived() = rho * cache.derived().array() + (Scalar(1) - rho) * grad.derived().array().square();
  // Entries with long runs of zero gradient decay into subnormals, which are slow on most FPUs.
  // Flushing them changes sqrt(cache) by less than 1e-150, far below epsilon.
  cache.derived() = (cache.derived().array() < std::numeric_limits<Scalar>::min())
                        .select(Scalar(0), cache.derived().array());
  param.derived().array() -= Scalar(s.learning_rate) * grad.derived().array() /
                             (cache.derived().array().sqrt() + Scalar(s.epsilon));
}

template <class Scalar>
void rmsprop_step(MlpParams<Scalar>& params, MlpParams<Scalar>& cache,
                  const MlpParams<Scalar>& grads, const RmsPropSettings& s) {
  if (!params.same_shape(cache) || !params.same_shape(grads))
    throw std::invalid_argument("rmsprop shape mismatch");
  rmsprop_step(params.w1, cache.w1, grads.w1, s);
  rmsprop_step(params.b1, cache.b1, grads.b1, s);
  rmsprop_step(params.w2, cache.w2, grads.w2, s);
  rmsprop_step(params.b2, cache.b2, grads.b2, s);
}

struct MlpSettings {
  std::size_t hidden_units = 50;
  RmsPropSettings optimizer{};
  double discount = 1.0;
  /// The target copy is refreshed after every `sync_interval` updates.
  std::size_t sync_interval = 200;
};

template <class Scalar>
struct TdGradient {
  MlpParams<Scalar> grads;
  Scalar loss = Scalar(0);
};

/// Single-hidden-layer Q network with a periodically synced target copy.
///
/// `Encoder` provides dimension() and encode<Scalar>(state, out).
template <class Scalar, class State, class Encoder>
class MlpQ {
 public:
  MlpQ(std::size_t action_count, Encoder encoder, MlpSettings settings, Rng& init_rng)
      : encoder_(encoder), settings_(settings) {
    online_ = MlpParams<Scalar>::zeros(static_cast<Eigen::Index>(encoder_.dimension()),
                                       static_cast<Eigen::Index>(settings.hidden_units),
                                       static_cast<Eigen::Index>(action_count));
    initialize_scaled_uniform(online_, init_rng);
    cache_ = MlpParams<Scalar>::zeros(online_.input_dim(), online_.hidden_dim(), online_.output_dim());
    target_ = online_;
  }

  [[nodiscard]] VectorX<Scalar> encode(const State& s) const {
    VectorX<Scalar> x(static_cast<Eigen::Index>(encoder_.dimension()));
    encoder_.template encode<Scalar>(s, x);
    return x;
  }

  [[nodiscard]] Eigen::VectorXd values(const State& s) const {
    return forward_columns(online_, encode(s)).col(0).template cast<double>();
  }
  [[nodiscard]] Eigen::VectorXd target_values(const State& s) const {
    return forward_columns(target_, encode(s)).col(0).template cast<double>();
  }

  /// Gradient of mean_b (y_b - Q(s_b, a_b))^2 with respect to the online
  /// parameters; y_b comes from the target copy and is held constant.
  [[nodiscard]] TdGradient<Scalar> td_gradient(std::span<const Transition<State>> batch) const {
    if (batch.empty()) throw std::invalid_argument("empty batch");
    const auto n = static_cast<Eigen::Index>(batch.size());
    const auto dim = static_cast<Eigen::Index>(encoder_.dimension());
    MatrixX<Scalar> x(dim, n);
    MatrixX<Scalar> x_next(dim, n);
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto& t = batch[static_cast<std::size_t>(b)];
      encoder_.template encode<Scalar>(t.state, x.col(b));
      encoder_.template encode<Scalar>(t.next_state, x_next.col(b));
    }

    const MatrixX<Scalar> next_q = forward_columns(target_, x_next);
    const MatrixX<Scalar> pre = input_layer(online_, x);
    const MatrixX<Scalar> hidden = pre.cwiseMax(Scalar(0));
    MatrixX<Scalar> q = online_.w2 * hidden;
    q.colwise() += online_.b2;

    TdGradient<Scalar> out;
    MatrixX<Scalar> d_q = MatrixX<Scalar>::Zero(q.rows(), n);
    const Scalar inv_n = Scalar(1) / Scalar(n);
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto& t = batch[static_cast<std::size_t>(b)];
      const auto a = static_cast<Eigen::Index>(t.action);
      const double next_max = t.terminal ? 0.0 : static_cast<double>(next_q.col(b).maxCoeff());
      const auto y = Scalar(q_learning_target(t.reward, t.terminal, settings_.discount, next_max));
      const Scalar err = y - q(a, b);
      out.loss += err * err * inv_n;
      d_q(a, b) = Scalar(-2) * err * inv_n;
    }

    const MatrixX<Scalar> d_hidden =
        (online_.w2.transpose() * d_q).cwiseProduct((pre.array() > Scalar(0)).template cast<Scalar>().matrix());
    out.grads.w2 = d_q * hidden.transpose();
    out.grads.b2 = d_q.rowwise().sum();
    out.grads.w1 = input_layer_gradient(d_hidden, x);
    out.grads.b1 = d_hidden.rowwise().sum();
    return out;
  }

  /// One RMSProp step on the batch TD loss; syncs the target on schedule.
  void update(std::span<const Transition<State>> batch) {
    const auto g = td_gradient(batch);
    rmsprop_step(online_, cache_, g.grads, settings_.optimizer);
    ++update_count_;
    if (settings_.sync_interval > 0 && update_count_ % settings_.sync_interval == 0) sync_target();
  }

  void sync_target() {
    target_ = online_;
    ++sync_count_;
  }

  [[nodiscard]] std::size_t action_count() const noexcept {
    return static_cast<std::size_t>(online_.output_dim());
  }
  [[nodiscard]] const MlpParams<Scalar>& online() const noexcept { return online_; }
  [[nodiscard]] MlpParams<Scalar>& online() noexcept { return online_; }
  [[nodiscard]] const MlpParams<Scalar>& target() const noexcept { return target_; }
  [[nodiscard]] const MlpParams<Scalar>& rmsprop_cache() const noexcept { return cache_; }
  [[nodiscard]] const MlpSettings& settings() const noexcept { return settings_; }
  [[nodiscard]] std::uint64_t update_count() const noexcept { return update_count_; }
  [[nodiscard]] std::uint64_t sync_count() const noexcept { return sync_count_; }

 private:
  // One-hot and other sparse encodings make w1 * x mostly multiplications by
  // zero; columns with few nonzeros are handled by gathering w1 columns.
  static bool sparse_column(const MatrixX<Scalar>& x, Eigen::Index b) {
    Eigen::Index nnz = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) nnz += x(i, b) != Scalar(0);
    return nnz * 8 <= x.rows();
  }

  static MatrixX<Scalar> input_layer(const MlpParams<Scalar>& p, const MatrixX<Scalar>& x) {
    MatrixX<Scalar> pre(p.hidden_dim(), x.cols());
    for (Eigen::Index b = 0; b < x.cols(); ++b) {
      if (sparse_column(x, b)) {
        pre.col(b) = p.b1;
        for (Eigen::Index i = 0; i < x.rows(); ++i)
          if (x(i, b) != Scalar(0)) pre.col(b) += p.w1.col(i) * x(i, b);
      } else {
        pre.col(b) = p.w1 * x.col(b) + p.b1;
      }
    }
    return pre;
  }

  static MatrixX<Scalar> forward_columns(const MlpParams<Scalar>& p, const MatrixX<Scalar>& x) {
    MatrixX<Scalar> out = p.w2 * input_layer(p, x).cwiseMax(Scalar(0));
    out.colwise() += p.b2;
    return out;
  }

  static MatrixX<Scalar> input_layer_gradient(const MatrixX<Scalar>& d_hidden, const MatrixX<Scalar>& x) {
    MatrixX<Scalar> g = MatrixX<Scalar>::Zero(d_hidden.rows(), x.rows());
    for (Eigen::Index b = 0; b < x.cols(); ++b) {
      if (sparse_column(x, b)) {
        for (Eigen::Index i = 0; i < x.rows(); ++i)
          if (x(i, b) != Scalar(0)) g.col(i) += d_hidden.col(b) * x(i, b);
      } else {
        g.noalias() += d_hidden.col(b) * x.col(b).transpose();
      }
    }
    return g;
  }

  Encoder encoder_;
  MlpSettings settings_;
  MlpParams<Scalar> online_;
  MlpParams<Scalar> target_;
  MlpParams<Scalar> cache_;
  std::uint64_t update_count_ = 0;
  std::uint64_t sync_count_ = 0;
};

template <class Scalar, class State, class Encoder>
TdGradient<Scalar> mlp_td_gradient(const MlpQ<Scalar, State, Encoder>& q,
                                   std::span<const Transition<State>> batch) {
  return q.td_gradient(batch);
}

/// Text dump: one "name rows cols" header per tensor followed by its values
/// in row-major order, 17 significant digits.
template <class Scalar>
void write_checkpoint(std::ostream& out, const MlpParams<Scalar>& p) {
  out.precision(17);
  p.for_each([&out](const char* name, const auto& t) {
    out << name << ' ' << t.rows() << ' ' << t.cols() << '\n';
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) out << (j ? " " : "") << static_cast<double>(t(i, j));
      out << '\n';
    }
  });
}

}  // namespace replaylab

#endif  // REPLAYLAB_MLP_HPP
