#include "hiernav/train/losses.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

namespace hiernav::train
{

double soft_value(const Eigen::VectorXd & q, const Eigen::VectorXd & pi, double alpha)
{
  if (q.size() != pi.size()) {
    throw std::invalid_argument("soft_value: size mismatch");
  }
  double v = 0.0;
  for (Eigen::Index a = 0; a < q.size(); ++a) {
    if (pi(a) > 0.0) {
      v += pi(a) * (q(a) - alpha * std::log(pi(a)));
    }
  }
  return v;
}

Eigen::VectorXd beacon_values(
  const std::vector<Eigen::VectorXd> & q_per_beacon,
  const std::vector<Eigen::VectorXd> & waypoint_pi_per_beacon, double alpha)
{
  if (q_per_beacon.size() != waypoint_pi_per_beacon.size()) {
    throw std::invalid_argument("beacon_values: size mismatch");
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(q_per_beacon.size()));
  for (std::size_t b = 0; b < q_per_beacon.size(); ++b) {
    values(static_cast<Eigen::Index>(b)) = soft_value(q_per_beacon[b], waypoint_pi_per_beacon[b], alpha);
  }
  return values;
}

double joint_soft_value(
  const std::vector<Eigen::VectorXd> & q_per_beacon, const Eigen::VectorXd & beacon_pi,
  const std::vector<Eigen::VectorXd> & waypoint_pi_per_beacon, double alpha)
{
  return soft_value(beacon_values(q_per_beacon, waypoint_pi_per_beacon, alpha), beacon_pi, alpha);
}

double bootstrap_target(double reward, bool done, double gamma, double next_value)
{
  return done ? reward : reward + gamma * next_value;
}

double critic_loss(const std::vector<double> & q, const std::vector<double> & targets)
{
  if (q.size() != targets.size() || q.empty()) {
    throw std::invalid_argument("critic_loss: need equally sized, nonempty inputs");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    total += (q[i] - targets[i]) * (q[i] - targets[i]);
  }
  return total / static_cast<double>(q.size());
}

nn::Tensor policy_objective(const nn::Tensor & log_pi, const Eigen::VectorXd & q, double alpha)
{
  if (log_pi.rows() != 1 || log_pi.cols() != q.size()) {
    throw std::invalid_argument("policy_objective: log_pi must be 1 x |q|");
  }
  nn::Tape & tape = *log_pi.tape();
  const nn::Tensor pi = nn::exp(log_pi);
  const nn::Tensor advantage = nn::sub(nn::scale(log_pi, alpha), tape.constant(q.transpose()));
  return nn::sum(nn::mul(pi, advantage));
}

double policy_objective(const Eigen::VectorXd & pi, const Eigen::VectorXd & q, double alpha)
{
  double total = 0.0;
  for (Eigen::Index a = 0; a < pi.size(); ++a) {
    if (pi(a) > 0.0) {
      total += pi(a) * (alpha * std::log(pi(a)) - q(a));
    }
  }
  return total;
}

double entropy(const Eigen::VectorXd & pi)
{
  double h = 0.0;
  for (Eigen::Index a = 0; a < pi.size(); ++a) {
    if (pi(a) > 0.0) {
      h -= pi(a) * std::log(pi(a));
    }
  }
  return h;
}

TemperatureLoss temperature_loss(double alpha, double entropy_value, double target)
{
  return {-alpha * (target - entropy_value), entropy_value - target};
}

double target_entropy(std::size_t candidates, double scale)
{
  return candidates > 1 ? scale * std::log(static_cast<double>(candidates)) : 0.0;
}

int argmax(const Eigen::VectorXd & v)
{
  int best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

int sample_index(const Eigen::VectorXd & pi, std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double total = pi.sum();
  double u = unit(rng) * total;
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    u -= pi(i);
    if (u < 0.0) {
      return static_cast<int>(i);
    }
  }
  // Rounding left a sliver of mass: fall back to the last positive entry.
  for (Eigen::Index i = pi.size() - 1; i >= 0; --i) {
    if (pi(i) > 0.0) {
      return static_cast<int>(i);
    }
  }
  return static_cast<int>(pi.size()) - 1;
}

std::optional<Triplet> build_triplet(
  const Eigen::VectorXd & pi, const Eigen::VectorXd & q_online,
  const std::function<Eigen::VectorXd()> & q_target, double epsilon, std::mt19937_64 & rng)
{
  if (pi.size() < 3) {
    return std::nullopt;
  }
  Triplet t{};
  t.sampled = sample_index(pi, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    t.positive = argmax(q_online);
  } else {
    t.positive = argmax(q_target());
  }
  Eigen::VectorXd rest = pi;
  rest(t.sampled) = 0.0;
  rest(t.positive) = 0.0;
  if (!(rest.sum() > 0.0)) {
    // All remaining mass underflowed; every other candidate is equally (im)probable.
    rest = Eigen::VectorXd::Ones(pi.size());
    rest(t.sampled) = 0.0;
    rest(t.positive) = 0.0;
  }
  t.negative = sample_index(rest, rng);
  return t;
}

std::optional<Triplet> build_triplet(
  const Eigen::VectorXd & pi, const Eigen::VectorXd & q_online,
  const Eigen::VectorXd & q_target, double epsilon, std::mt19937_64 & rng)
{
  return build_triplet(pi, q_online, [&q_target] {return q_target;}, epsilon, rng);
}

nn::Tensor contrastive_loss(
  const nn::Tensor & sampled, const nn::Tensor & positive, const nn::Tensor & negative,
  double margin, bool clamp)
{
  const nn::Tensor pull = nn::l2_norm(nn::sub(positive, sampled));
  const nn::Tensor push = nn::l2_norm(nn::sub(negative, sampled));
  const nn::Tensor raw = nn::add_scalar(nn::sub(pull, push), margin);
  return clamp ? nn::relu(raw) : raw;
}

double contrastive_loss(
  const Eigen::VectorXd & sampled, const Eigen::VectorXd & positive,
  const Eigen::VectorXd & negative, double margin, bool clamp)
{
  const double raw = (positive - sampled).norm() - (negative - sampled).norm() + margin;
  return clamp ? std::max(raw, 0.0) : raw;
}

}  // namespace hiernav::train
