#include "hiernav/runner/training.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "hiernav/nn/checkpoint.hpp"
#include "hiernav/runner/config.hpp"

namespace hiernav::runner
{

std::string train_log_header()
{
  return "step,critic_loss,policy_loss,temp_loss,contrastive_loss,alpha,buffer_size";
}

TrainingSummary train_policy(
  train::Trainer & trainer, const std::vector<world::GroundTruthMap> & maps, const TrainingConfig & config,
  std::ostream * log, const std::function<void(int)> & checkpoint)
{
  if (maps.empty()) {
    throw ConfigError("training needs at least one map");
  }
  if (config.episodes < 0) {
    throw ConfigError("episode count must be non-negative");
  }
  train::ReplayBuffer buffer(config.trainer.buffer_capacity);
  TrainingSummary summary;
  const int tail_start = config.episodes - std::max(1, config.episodes / 10);
  int tail_count = 0;
  if (log) {
    *log << train_log_header() << '\n';
  }
  for (int e = 0; e < config.episodes; ++e) {
    EpisodeConfig episode = config.episode;
    episode.seed = config.episode.seed * 1000003ULL + static_cast<std::uint64_t>(e);
    episode.greedy = false;
    double ret = 0.0;
    EpisodeHooks hooks;
    hooks.on_transition = [&](const train::Transition & t) {
        buffer.push(t);
        ret += t.reward;
        ++summary.transitions;
      };
    run_episode(maps[static_cast<std::size_t>(e) % maps.size()], {PlannerKind::Learned, &trainer.policy()}, episode, hooks);
    if (e >= tail_start) {
      summary.mean_return_last += ret;
      ++tail_count;
    }
    for (int i = 0; i < config.trainer.iterations_per_episode; ++i) {
      const auto report = trainer.train_step(buffer);
      if (!report) {
        break;
      }
      for (double v : {report->critic, report->policy, report->temperature, report->contrastive, report->alpha}) {
        summary.finite = summary.finite && std::isfinite(v);
      }
      if (log) {
        *log << trainer.steps() << ',' << report->critic << ',' << report->policy << ',' << report->temperature
             << ',' << report->contrastive << ',' << report->alpha << ',' << buffer.size() << '\n';
      }
    }
    summary.episodes = e + 1;
    if (checkpoint && config.checkpoint_every > 0 && (e + 1) % config.checkpoint_every == 0) {
      checkpoint(e + 1);
    }
  }
  if (checkpoint && (config.checkpoint_every <= 0 || config.episodes % config.checkpoint_every != 0)) {
    checkpoint(config.episodes);
  }
  summary.train_steps = trainer.steps();
  summary.mean_return_last = tail_count > 0 ? summary.mean_return_last / tail_count : 0.0;
  return summary;
}

void save_policy(const nn::PolicyNet & policy, const std::string & path)
{
  nn::save_checkpoint(policy.params(), path);
  std::ofstream out(path + ".cfg", std::ios::binary);
  if (!out) {
    throw nn::CheckpointError("cannot write " + path + ".cfg");
  }
  const nn::NetworkConfig & c = policy.config();
  out << "feature_dim=" << c.feature_dim << '\n'
      << "embed_dim=" << c.embed_dim << '\n'
      << "encoder_layers=" << c.encoder_layers << '\n'
      << "ff_hidden=" << c.ff_hidden << '\n'
      << "pointer_clip=" << c.pointer_clip << '\n';
}

nn::PolicyNet load_policy(const std::string & path)
{
  const KeyValueConfig kv = KeyValueConfig::load(path + ".cfg");
  nn::NetworkConfig c;
  c.feature_dim = kv.get_int("feature_dim", c.feature_dim);
  c.embed_dim = kv.get_int("embed_dim", c.embed_dim);
  c.encoder_layers = kv.get_int("encoder_layers", c.encoder_layers);
  c.ff_hidden = kv.get_int("ff_hidden", c.ff_hidden);
  c.pointer_clip = kv.get_double("pointer_clip", c.pointer_clip);
  kv.reject_unused();
  nn::PolicyNet policy(c);
  nn::load_checkpoint(policy.params(), path);
  return policy;
}

}  // namespace hiernav::runner
