#ifndef HIERNAV_RUNNER_TRAINING_HPP_
#define HIERNAV_RUNNER_TRAINING_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hiernav/nn/networks.hpp"
#include "hiernav/runner/episode.hpp"
#include "hiernav/train/trainer.hpp"

namespace hiernav::runner
{

struct TrainingConfig
{
  EpisodeConfig episode;
  nn::NetworkConfig network;
  train::TrainerConfig trainer;
  int episodes{500};
  /// Save a checkpoint every this many episodes; <= 0 disables.
  int checkpoint_every{100};
};

struct TrainingSummary
{
  int episodes{0};
  long train_steps{0};
  std::size_t transitions{0};
  double mean_return_last{0.0};  ///< mean undiscounted return over the last 10% of episodes
  bool finite{true};             ///< every reported loss was finite
};

/// CSV header of the training log.
std::string train_log_header();

/// Collects one episode per iteration on maps[i % maps.size()] with the
/// current stochastic policy, then runs the configured number of trainer
/// updates. Each update appends a row to `log` (if given); `checkpoint` is
/// called with the episode count every `checkpoint_every` episodes and at the end.
TrainingSummary train_policy(
  train::Trainer & trainer, const std::vector<world::GroundTruthMap> & maps, const TrainingConfig & config,
  std::ostream * log = nullptr, const std::function<void(int)> & checkpoint = {});

/// Writes the policy weights to `path` and its network shape to `path + ".cfg"`.
void save_policy(const nn::PolicyNet & policy, const std::string & path);
/// Reads the shape from `path + ".cfg"` and the weights from `path`.
/// Throws ConfigError or nn::CheckpointError.
nn::PolicyNet load_policy(const std::string & path);

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_TRAINING_HPP_
