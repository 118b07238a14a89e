#include "hiernav/train/trainer.hpp"

#include <cmath>
#include <stdexcept>

namespace hiernav::train
{

namespace
{

Eigen::VectorXd column(const nn::Tensor & t)
{
  return t.value().col(0);
}

nn::ParameterStore make_log_alpha(double alpha)
{
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("initial alpha must be positive");
  }
  nn::ParameterStore store;
  store.add("log_alpha", nn::Matrix::Constant(1, 1, std::log(alpha)));
  return store;
}

nn::AdamConfig adam(double lr, double clip)
{
  nn::AdamConfig c;
  c.learning_rate = lr;
  c.max_grad_norm = clip;
  return c;
}

void require_candidates(const graph::Observation & obs)
{
  if (obs.beacons.empty()) {
    throw nn::NoBeaconError("observation has no beacon");
  }
  if (obs.neighbors.empty()) {
    throw nn::NoActionError("current node has no neighbour");
  }
}

}  // namespace

void TrainerConfig::validate() const
{
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1]");
  }
  if (batch < 1) {
    throw std::invalid_argument("batch must be at least 1");
  }
  if (!(margin >= 0.0)) {
    throw std::invalid_argument("margin must be non-negative");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in [0, 1]");
  }
  if (!(initial_alpha > 0.0)) {
    throw std::invalid_argument("initial alpha must be positive");
  }
  if (buffer_capacity < 1 || iterations_per_episode < 0) {
    throw std::invalid_argument("buffer capacity and iteration count must be positive");
  }
}

Decision decide(const nn::PolicyNet & policy, const graph::Observation & obs, std::mt19937_64 & rng, bool greedy)
{
  require_candidates(obs);
  nn::Tape tape;
  const nn::Tensor encoded = policy.encode(tape, obs);
  const Eigen::VectorXd beacon_pi = nn::probabilities(policy.beacon_head(tape, encoded, obs).log_probs);
  Decision d;
  d.beacon = greedy ? argmax(beacon_pi) : sample_index(beacon_pi, rng);
  const nn::Tensor candidates = policy.candidate_features(tape, encoded, obs);
  const Eigen::VectorXd waypoint_pi =
    nn::probabilities(policy.waypoint_head(tape, encoded, candidates, obs, d.beacon).log_probs);
  d.waypoint = greedy ? argmax(waypoint_pi) : sample_index(waypoint_pi, rng);
  return d;
}

PolicyView evaluate_policy(const nn::PolicyNet & policy, const graph::Observation & obs)
{
  require_candidates(obs);
  nn::Tape tape;
  const nn::Tensor encoded = policy.encode(tape, obs);
  PolicyView view;
  view.beacon_pi = nn::probabilities(policy.beacon_head(tape, encoded, obs).log_probs);
  const nn::Tensor candidates = policy.candidate_features(tape, encoded, obs);
  for (std::size_t b = 0; b < obs.beacons.size(); ++b) {
    view.waypoint_pi.push_back(
      nn::probabilities(policy.waypoint_head(tape, encoded, candidates, obs, static_cast<int>(b)).log_probs));
  }
  return view;
}

std::vector<Eigen::VectorXd> critic_table(const nn::CriticNet & critic, const graph::Observation & obs)
{
  require_candidates(obs);
  nn::Tape tape;
  const nn::Tensor encoded = critic.encode(tape, obs);
  const nn::Tensor candidates = critic.candidate_features(tape, encoded, obs);
  std::vector<Eigen::VectorXd> table;
  for (std::size_t b = 0; b < obs.beacons.size(); ++b) {
    table.push_back(column(critic.q_values(tape, encoded, candidates, obs, static_cast<int>(b))));
  }
  return table;
}

double next_state_value(
  const nn::CriticNet & target, const nn::PolicyNet & policy, const graph::Observation & obs, double alpha)
{
  if (obs.beacons.empty() || obs.neighbors.empty()) {
    // Nothing to choose from: the episode cannot continue past this point.
    return 0.0;
  }
  const PolicyView view = evaluate_policy(policy, obs);
  return joint_soft_value(critic_table(target, obs), view.beacon_pi, view.waypoint_pi, alpha);
}

namespace
{

double transition_target(
  const Transition & t, const nn::CriticNet & target, const nn::PolicyNet & policy, double alpha, double gamma)
{
  if (t.done || !t.next_observation) {
    return t.reward;
  }
  return bootstrap_target(t.reward, false, gamma, next_state_value(target, policy, *t.next_observation, alpha));
}

/// Online Q(o, (b, a)) on `tape`.
nn::Tensor online_q(nn::Tape & tape, const nn::CriticNet & critic, const Transition & t)
{
  const graph::Observation & obs = *t.observation;
  const nn::Tensor encoded = critic.encode(tape, obs);
  const nn::Tensor candidates = critic.candidate_features(tape, encoded, obs);
  return nn::gather_rows(critic.q_values(tape, encoded, candidates, obs, t.beacon), {t.waypoint});
}

}  // namespace

double critic_loss(
  const std::vector<Transition> & batch, const nn::CriticNet & critic, const nn::CriticNet & target,
  const nn::PolicyNet & policy, double alpha, double gamma, nn::Gradients * grads)
{
  if (batch.empty()) {
    throw std::invalid_argument("critic_loss: empty batch");
  }
  const double n = static_cast<double>(batch.size());
  double total = 0.0;
  for (const Transition & t : batch) {
    const double y = transition_target(t, target, policy, alpha, gamma);
    nn::Tape tape;
    const nn::Tensor q = online_q(tape, critic, t);
    const double err = q.scalar() - y;
    total += err * err;
    if (grads != nullptr) {
      tape.backward(q, 2.0 * err / n);
      nn::accumulate(*grads, tape.gradients(critic.params()));
    }
  }
  return total / n;
}

void soft_update_target(nn::CriticNet & target, const nn::CriticNet & online, double tau)
{
  nn::soft_update(target.params(), online.params(), tau);
}

Trainer::Trainer(const nn::NetworkConfig & network, const TrainerConfig & config)
: config_(config),
  policy_(network),
  critic_([&network] {
      nn::NetworkConfig c = network;
      c.seed = network.seed + 1;
      return c;
    }()),
  target_(critic_),
  log_alpha_(make_log_alpha(config.initial_alpha)),
  policy_opt_(policy_.params(), adam(config.policy_lr, config.max_grad_norm)),
  critic_opt_(critic_.params(), adam(config.critic_lr, config.max_grad_norm)),
  alpha_opt_(log_alpha_, adam(config.alpha_lr, 0.0)),
  rng_(config.seed)
{
  config_.validate();
}

double Trainer::alpha() const
{
  return std::exp(log_alpha_[0].value(0, 0));
}

std::optional<LossReport> Trainer::train_step(const ReplayBuffer & buffer)
{
  if (buffer.size() < config_.batch) {
    return std::nullopt;
  }
  const std::vector<Transition> batch = buffer.sample(config_.batch, rng_);
  const double alpha = this->alpha();
  const double n = static_cast<double>(batch.size());

  LossReport report;
  report.alpha = alpha;

  nn::Gradients critic_grads = nn::zero_gradients(critic_.params());
  report.critic = critic_loss(batch, critic_, target_, policy_, alpha, config_.gamma, &critic_grads);

  nn::Gradients policy_grads = nn::zero_gradients(policy_.params());
  double alpha_grad = 0.0;  // dL/dalpha, batch mean
  for (const Transition & t : batch) {
    const graph::Observation & obs = *t.observation;
    // Q from the critic as it was before this step's update.
    const std::vector<Eigen::VectorXd> q_table = critic_table(critic_, obs);

    nn::Tape tape;
    const nn::Tensor encoded = policy_.encode(tape, obs);
    const nn::BeaconHead beacon_head = policy_.beacon_head(tape, encoded, obs);
    const nn::Tensor candidates = policy_.candidate_features(tape, encoded, obs);

    std::vector<Eigen::VectorXd> waypoint_pi;
    nn::Tensor chosen_log_pi;
    for (std::size_t b = 0; b < obs.beacons.size(); ++b) {
      const nn::Tensor log_pi = policy_.waypoint_head(tape, encoded, candidates, obs, static_cast<int>(b)).log_probs;
      waypoint_pi.push_back(nn::probabilities(log_pi));
      if (static_cast<int>(b) == t.beacon) {
        chosen_log_pi = log_pi;
      }
    }
    const Eigen::VectorXd beacon_q = beacon_values(q_table, waypoint_pi, alpha);
    const Eigen::VectorXd beacon_pi = nn::probabilities(beacon_head.log_probs);

    nn::Tensor objective = nn::add(
      policy_objective(beacon_head.log_probs, beacon_q, alpha),
      policy_objective(chosen_log_pi, q_table[t.beacon], alpha));
    report.policy += objective.scalar() / n;

    if (config_.use_contrastive) {
      const Eigen::VectorXd & pi_a = waypoint_pi[t.beacon];
      const auto triplet = build_triplet(
        pi_a, q_table[t.beacon],
        [&] {return critic_table(target_, obs)[t.beacon];}, config_.epsilon, rng_);
      if (triplet) {
        const nn::Tensor c = contrastive_loss(
          nn::gather_rows(candidates, {triplet->sampled}),
          nn::gather_rows(candidates, {triplet->positive}),
          nn::gather_rows(candidates, {triplet->negative}),
          config_.margin, config_.clamp_contrastive);
        report.contrastive += c.scalar() / n;
        objective = nn::add(objective, nn::scale(c, config_.contrastive_weight));
      }
    }
    tape.backward(objective, 1.0 / n);
    nn::accumulate(policy_grads, tape.gradients(policy_.params()));

    const double beacon_gap = entropy(beacon_pi) -
      target_entropy(obs.beacons.size(), config_.target_entropy_scale);
    const double waypoint_gap = entropy(waypoint_pi[t.beacon]) -
      target_entropy(obs.neighbors.size(), config_.target_entropy_scale);
    const TemperatureLoss tb = temperature_loss(alpha, beacon_gap, 0.0);
    const TemperatureLoss ta = temperature_loss(alpha, waypoint_gap, 0.0);
    report.temperature += (tb.value + ta.value) / n;
    alpha_grad += (tb.d_alpha + ta.d_alpha) / n;
  }

  critic_opt_.step(critic_.params(), critic_grads);
  policy_opt_.step(policy_.params(), policy_grads);
  nn::Gradients alpha_grads{nn::Matrix::Constant(1, 1, alpha_grad * alpha)};  // chain rule through exp
  alpha_opt_.step(log_alpha_, alpha_grads);
  soft_update_target(target_, critic_, config_.tau);
  ++steps_;
  return report;
}

}  // namespace hiernav::train
