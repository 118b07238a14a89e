#ifndef HIERNAV_TRAIN_REPLAY_BUFFER_HPP_
#define HIERNAV_TRAIN_REPLAY_BUFFER_HPP_

#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "hiernav/graph/observation.hpp"

namespace hiernav::train
{

using ObservationPtr = std::shared_ptr<const graph::Observation>;

/// One decision: beacon and waypoint are slots into observation->beacons and
/// observation->neighbors. When `done` is set the next observation is never
/// bootstrapped and may be null.
struct Transition
{
  ObservationPtr observation;
  int beacon{0};
  int waypoint{0};
  double reward{0.0};
  ObservationPtr next_observation;
  bool done{false};
};

/// Fixed-capacity FIFO of transitions. push() is atomic per transition and
/// sample() works on a consistent snapshot, so collectors and the trainer
/// may run on different threads.
class ReplayBuffer
{
public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const;
  std::size_t capacity() const {return capacity_;}

  /// `count` distinct transitions chosen uniformly (without replacement).
  /// Throws std::invalid_argument if count > size().
  std::vector<Transition> sample(std::size_t count, std::mt19937_64 & rng) const;

  /// Transitions from oldest to newest.
  std::vector<Transition> snapshot() const;

private:
  std::size_t capacity_;
  std::vector<Transition> ring_;
  std::size_t head_{0};  ///< slot of the oldest entry once full
  mutable std::mutex mutex_;
};

}  // namespace hiernav::train

#endif  // HIERNAV_TRAIN_REPLAY_BUFFER_HPP_
