#ifndef HIERNAV_TRAIN_TRAINER_HPP_
#define HIERNAV_TRAIN_TRAINER_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hiernav/nn/adam.hpp"
#include "hiernav/nn/networks.hpp"
#include "hiernav/train/losses.hpp"
#include "hiernav/train/replay_buffer.hpp"

namespace hiernav::train
{

struct TrainerConfig
{
  double gamma{0.99};
  std::size_t batch{64};
  double initial_alpha{0.2};
  double target_entropy_scale{0.1};
  double tau{0.005};
  double margin{1.0};
  double epsilon{0.5};
  double contrastive_weight{0.1};
  double policy_lr{1e-4};
  double critic_lr{1e-4};
  double alpha_lr{1e-4};
  double max_grad_norm{0.0};
  int iterations_per_episode{4};
  std::size_t buffer_capacity{10000};
  bool use_contrastive{true};
  bool clamp_contrastive{true};
  std::uint64_t seed{0};

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct LossReport
{
  double critic{0.0};
  double policy{0.0};
  double temperature{0.0};
  double contrastive{0.0};
  double alpha{0.0};
};

/// Action chosen by the hierarchical policy: slots into obs.beacons and
/// obs.neighbors.
struct Decision
{
  int beacon{0};
  int waypoint{0};
};

/// Samples (or, when `greedy`, takes the argmax of) the beacon head, then the
/// waypoint head conditioned on that beacon. Throws nn::NoBeaconError or
/// nn::NoActionError when a candidate set is empty.
Decision decide(const nn::PolicyNet & policy, const graph::Observation & obs, std::mt19937_64 & rng, bool greedy);

/// Per-beacon distributions and values of the current policy on one observation.
struct PolicyView
{
  Eigen::VectorXd beacon_pi;
  std::vector<Eigen::VectorXd> waypoint_pi;  ///< one per beacon slot
};

PolicyView evaluate_policy(const nn::PolicyNet & policy, const graph::Observation & obs);

/// Q(o, (b, .)) for every beacon slot b.
std::vector<Eigen::VectorXd> critic_table(const nn::CriticNet & critic, const graph::Observation & obs);

/// Soft value of the next observation under `target` and the current policy.
double next_state_value(
  const nn::CriticNet & target, const nn::PolicyNet & policy, const graph::Observation & obs, double alpha);

/// Mean squared Bellman error over `batch`; when `grads` is given the critic
/// gradient of that loss is accumulated into it. The target side is a plain
/// value and carries no gradient.
double critic_loss(
  const std::vector<Transition> & batch, const nn::CriticNet & critic, const nn::CriticNet & target,
  const nn::PolicyNet & policy, double alpha, double gamma, nn::Gradients * grads = nullptr);

/// target <- tau * online + (1 - tau) * target.
void soft_update_target(nn::CriticNet & target, const nn::CriticNet & online, double tau);

class Trainer
{
public:
  Trainer(const nn::NetworkConfig & network, const TrainerConfig & config);

  const TrainerConfig & config() const {return config_;}
  nn::PolicyNet & policy() {return policy_;}
  const nn::PolicyNet & policy() const {return policy_;}
  nn::CriticNet & critic() {return critic_;}
  const nn::CriticNet & critic() const {return critic_;}
  const nn::CriticNet & target_critic() const {return target_;}
  double alpha() const;

  /// One update of critic, policy (plus contrastive term) and temperature,
  /// then a target soft update. Returns nullopt, touching nothing, while the
  /// buffer holds fewer than `batch` transitions.
  std::optional<LossReport> train_step(const ReplayBuffer & buffer);

  long steps() const {return steps_;}
  std::mt19937_64 & rng() {return rng_;}

private:
  TrainerConfig config_;
  nn::PolicyNet policy_;
  nn::CriticNet critic_;
  nn::CriticNet target_;
  nn::ParameterStore log_alpha_;
  nn::Adam policy_opt_;
  nn::Adam critic_opt_;
  nn::Adam alpha_opt_;
  std::mt19937_64 rng_;
  long steps_{0};
};

}  // namespace hiernav::train

#endif  // HIERNAV_TRAIN_TRAINER_HPP_
