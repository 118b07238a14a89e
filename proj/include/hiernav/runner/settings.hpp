#ifndef HIERNAV_RUNNER_SETTINGS_HPP_
#define HIERNAV_RUNNER_SETTINGS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hiernav/runner/config.hpp"
#include "hiernav/runner/mapgen.hpp"
#include "hiernav/runner/training.hpp"

namespace hiernav::runner
{

/// Every tunable of the command-line tool, read from a flat key=value file.
///
/// Keys: task, sensor_range, max_steps, lattice_columns, lattice_rows, k,
/// beacon_radius, completion, step_penalty, done_bonus, grid_step_cap,
/// greedy, timing, validate; embed_dim, encoder_layers, ff_hidden,
/// pointer_clip; gamma, batch, initial_alpha, target_entropy_scale, tau,
/// margin, epsilon, contrastive_weight, learning_rate (all three nets),
/// policy_lr, critic_lr, alpha_lr, max_grad_norm, iterations_per_episode,
/// buffer_capacity, use_contrastive, clamp_contrastive; episodes,
/// checkpoint_every; style, width, height, count, cell_size; planners,
/// workers; seed.
struct Settings
{
  TrainingConfig training;
  MapSpec maps;
  int map_count{20};
  std::vector<std::string> planners;
  int workers{1};
  std::uint64_t seed{0};

  EpisodeConfig & episode() {return training.episode;}
  const EpisodeConfig & episode() const {return training.episode;}
};

/// Reads `config` into defaults, applies `seed` everywhere a seed is used,
/// and rejects unknown keys. Throws ConfigError.
Settings read_settings(const KeyValueConfig & config);

/// Sets the seed of maps, episodes, networks and trainer.
void apply_seed(Settings & settings, std::uint64_t seed);

std::vector<std::string> split_list(const std::string & text);

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_SETTINGS_HPP_
