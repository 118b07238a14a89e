#include "hiernav/runner/settings.hpp"

#include <sstream>

namespace hiernav::runner
{

std::vector<std::string> split_list(const std::string & text)
{
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first != std::string::npos) {
      items.push_back(item.substr(first, last - first + 1));
    }
  }
  return items;
}

void apply_seed(Settings & s, std::uint64_t seed)
{
  s.seed = seed;
  s.training.episode.seed = seed;
  s.training.network.seed = seed;
  s.training.trainer.seed = seed;
}

Settings read_settings(const KeyValueConfig & kv)
{
  Settings s;
  EpisodeConfig & e = s.training.episode;
  e.task = parse_task(kv.get_string("task", to_string(e.task)));
  e.sensor_range = kv.get_double("sensor_range", e.sensor_range);
  e.max_steps = kv.get_int("max_steps", e.max_steps);
  e.lattice.columns = kv.get_int("lattice_columns", e.lattice.columns);
  e.lattice.rows = kv.get_int("lattice_rows", e.lattice.rows);
  e.k = kv.get_int("k", e.k);
  e.beacon_radius = kv.get_double("beacon_radius", e.beacon_radius);
  e.completion = kv.get_double("completion", e.completion);
  e.step_penalty = kv.get_double("step_penalty", e.step_penalty);
  e.done_bonus = kv.get_double("done_bonus", e.done_bonus);
  e.grid_step_cap = kv.get_int("grid_step_cap", e.grid_step_cap);
  e.greedy = kv.get_bool("greedy", e.greedy);
  e.timing = kv.get_bool("timing", e.timing);
  e.validate = kv.get_bool("validate", e.validate);

  nn::NetworkConfig & n = s.training.network;
  n.embed_dim = kv.get_int("embed_dim", n.embed_dim);
  n.encoder_layers = kv.get_int("encoder_layers", n.encoder_layers);
  n.ff_hidden = kv.get_int("ff_hidden", n.ff_hidden);
  n.pointer_clip = kv.get_double("pointer_clip", n.pointer_clip);
  n.feature_dim = e.task == Task::Navigation ? graph::kNavigationFeatures : graph::kExplorationFeatures;
  if (n.embed_dim < 1 || n.encoder_layers < 0 || n.ff_hidden < 1) {
    throw ConfigError("network dimensions must be positive");
  }

  train::TrainerConfig & t = s.training.trainer;
  t.gamma = kv.get_double("gamma", t.gamma);
  const int batch = kv.get_int("batch", static_cast<int>(t.batch));
  if (batch < 1) {
    throw ConfigError("batch must be at least 1");
  }
  t.batch = static_cast<std::size_t>(batch);
  t.initial_alpha = kv.get_double("initial_alpha", t.initial_alpha);
  t.target_entropy_scale = kv.get_double("target_entropy_scale", t.target_entropy_scale);
  t.tau = kv.get_double("tau", t.tau);
  t.margin = kv.get_double("margin", t.margin);
  t.epsilon = kv.get_double("epsilon", t.epsilon);
  t.contrastive_weight = kv.get_double("contrastive_weight", t.contrastive_weight);
  const double lr = kv.get_double("learning_rate", t.policy_lr);
  t.policy_lr = kv.get_double("policy_lr", lr);
  t.critic_lr = kv.get_double("critic_lr", lr);
  t.alpha_lr = kv.get_double("alpha_lr", lr);
  t.max_grad_norm = kv.get_double("max_grad_norm", t.max_grad_norm);
  t.iterations_per_episode = kv.get_int("iterations_per_episode", t.iterations_per_episode);
  const int capacity = kv.get_int("buffer_capacity", static_cast<int>(t.buffer_capacity));
  if (capacity < 1) {
    throw ConfigError("buffer capacity must be at least 1");
  }
  t.buffer_capacity = static_cast<std::size_t>(capacity);
  t.use_contrastive = kv.get_bool("use_contrastive", t.use_contrastive);
  t.clamp_contrastive = kv.get_bool("clamp_contrastive", t.clamp_contrastive);
  try {
    t.validate();
  } catch (const std::invalid_argument & err) {
    throw ConfigError(err.what());
  }

  s.training.episodes = kv.get_int("episodes", s.training.episodes);
  s.training.checkpoint_every = kv.get_int("checkpoint_every", s.training.checkpoint_every);

  s.maps.style = parse_style(kv.get_string("style", to_string(s.maps.style)));
  s.maps.width = kv.get_int("width", s.maps.width);
  s.maps.height = kv.get_int("height", s.maps.height);
  s.maps.cell_size = kv.get_double("cell_size", s.maps.cell_size);
  s.map_count = kv.get_int("count", s.map_count);

  s.planners = split_list(kv.get_string("planners", ""));
  s.workers = kv.get_int("workers", s.workers);
  apply_seed(s, kv.get_uint("seed", 0));
  kv.reject_unused();
  e.check();
  return s;
}

}  // namespace hiernav::runner
