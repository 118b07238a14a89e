#include "hiernav/train/replay_buffer.hpp"

#include <numeric>
#include <stdexcept>

namespace hiernav::train
{

ReplayBuffer::ReplayBuffer(std::size_t capacity)
: capacity_(capacity)
{
  if (capacity == 0) {
    throw std::invalid_argument("replay buffer capacity must be positive");
  }
  ring_.reserve(capacity);
}

void ReplayBuffer::push(Transition t)
{
  std::lock_guard lock(mutex_);
  if (ring_.size() < capacity_) {
    ring_.push_back(std::move(t));
  } else {
    ring_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
}

std::size_t ReplayBuffer::size() const
{
  std::lock_guard lock(mutex_);
  return ring_.size();
}

std::vector<Transition> ReplayBuffer::sample(std::size_t count, std::mt19937_64 & rng) const
{
  std::lock_guard lock(mutex_);
  if (count > ring_.size()) {
    throw std::invalid_argument("cannot sample more transitions than stored");
  }
  // Partial Fisher-Yates over slot indices.
  std::vector<std::size_t> slots(ring_.size());
  std::iota(slots.begin(), slots.end(), 0);
  std::vector<Transition> batch;
  batch.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, slots.size() - 1);
    std::swap(slots[i], slots[pick(rng)]);
    batch.push_back(ring_[slots[i]]);
  }
  return batch;
}

std::vector<Transition> ReplayBuffer::snapshot() const
{
  std::lock_guard lock(mutex_);
  std::vector<Transition> out;
  out.reserve(ring_.size());
  for (std::size_t i = 0; i < ring_.size(); ++i) {
    out.push_back(ring_[(head_ + i) % ring_.size()]);
  }
  return out;
}

}  // namespace hiernav::train
