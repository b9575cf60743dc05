#ifndef REPLAYLAB_REPLAY_BUFFER_HPP
#define REPLAYLAB_REPLAY_BUFFER_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "replaylab/rng.hpp"
#include "replaylab/transition.hpp"

namespace replaylab {

/// Fixed-capacity FIFO ring of transitions.
///
/// Storage grows on demand up to `capacity`, so a 10^7-slot buffer that only
/// ever sees 10^5 pushes costs 10^5 slots. Once full, each push overwrites the
/// oldest element. Index 0 is always the oldest resident transition.
template <class State>
class ReplayBuffer {
 public:
  using value_type = Transition<State>;

  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be positive");
  }

  void push(const value_type& t) {
    if (storage_.size() < capacity_) {
      storage_.push_back(t);
    } else {
      storage_[head_] = t;
      head_ = (head_ + 1) % capacity_;
    }
    ++insert_count_;
  }

  /// i-th element in insertion order, 0 = oldest.
  [[nodiscard]] const value_type& operator[](std::size_t i) const {
    return storage_[(head_ + i) % storage_.size()];
  }

  [[nodiscard]] const value_type& newest() const { return (*this)[storage_.size() - 1]; }

  [[nodiscard]] std::size_t size() const noexcept { return storage_.size(); }
  [[nodiscard]] bool empty() const noexcept { return storage_.empty(); }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
  [[nodiscard]] std::uint64_t insert_count() const noexcept { return insert_count_; }
  [[nodiscard]] std::uint64_t evictions() const noexcept {
    return insert_count_ > capacity_ ? insert_count_ - capacity_ : 0;
  }

  /// Contents in insertion order.
  [[nodiscard]] std::vector<value_type> to_vector() const {
    std::vector<value_type> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i]);
    return out;
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // oldest slot once full
  std::uint64_t insert_count_ = 0;
  std::vector<value_type> storage_;
};

/// Appends n draws, uniform with replacement, to `out`.
template <class State>
void sample_uniform_into(const ReplayBuffer<State>& buffer, std::size_t n, Rng& rng,
                         std::vector<Transition<State>>& out) {
  if (buffer.empty()) throw std::invalid_argument("empty buffer");
  for (std::size_t i = 0; i < n; ++i) out.push_back(buffer[rng.uniform_index(buffer.size())]);
}

template <class State>
SampleBatch<State> sample_uniform(const ReplayBuffer<State>& buffer, std::size_t n, Rng& rng) {
  SampleBatch<State> batch;
  batch.transitions.reserve(n);
  sample_uniform_into(buffer, n, rng, batch.transitions);
  return batch;
}

/// n-1 uniform draws followed by `latest` in the final slot.
template <class State>
void combined_batch_into(const ReplayBuffer<State>& buffer, const Transition<State>& latest,
                         std::size_t n, Rng& rng, SampleBatch<State>& out) {
  if (n == 0) throw std::invalid_argument("empty batch request");
  out.transitions.clear();
  if (n > 1) sample_uniform_into(buffer, n - 1, rng, out.transitions);
  out.transitions.push_back(latest);
  out.contains_latest = true;
}

template <class State>
SampleBatch<State> combined_batch(const ReplayBuffer<State>& buffer,
                                  const Transition<State>& latest, std::size_t n, Rng& rng) {
  SampleBatch<State> batch;
  batch.transitions.reserve(n);
  combined_batch_into(buffer, latest, n, rng, batch);
  return batch;
}

}  // namespace replaylab

#endif  // REPLAYLAB_REPLAY_BUFFER_HPP
