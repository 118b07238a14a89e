#ifndef HIERNAV_TRAIN_LOSSES_HPP_
#define HIERNAV_TRAIN_LOSSES_HPP_

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "hiernav/nn/tensor.hpp"

namespace hiernav::train
{

/// Soft state value sum_a pi(a) (Q(a) - alpha log pi(a)), exact over the
/// discrete candidates. Zero-probability actions contribute nothing.
double soft_value(const Eigen::VectorXd & q, const Eigen::VectorXd & pi, double alpha);

/// Soft value of the joint (beacon, waypoint) policy,
///   sum_b pi_b(b) [ soft_value(Q(b, .), pi_a(.|b), alpha) - alpha log pi_b(b) ],
/// i.e. soft_value over the per-beacon values returned by `beacon_values`.
double joint_soft_value(
  const std::vector<Eigen::VectorXd> & q_per_beacon, const Eigen::VectorXd & beacon_pi,
  const std::vector<Eigen::VectorXd> & waypoint_pi_per_beacon, double alpha);

/// Per-beacon values with the waypoint choice marginalised by soft_value.
Eigen::VectorXd beacon_values(
  const std::vector<Eigen::VectorXd> & q_per_beacon,
  const std::vector<Eigen::VectorXd> & waypoint_pi_per_beacon, double alpha);

/// r + gamma (1 - done) V(o').
double bootstrap_target(double reward, bool done, double gamma, double next_value);

/// Mean squared error between predicted Q values and their targets.
double critic_loss(const std::vector<double> & q, const std::vector<double> & targets);

/// sum_a pi(a) (alpha log pi(a) - Q(a)) with Q held constant; differentiable
/// in `log_pi` (1 x n).
nn::Tensor policy_objective(const nn::Tensor & log_pi, const Eigen::VectorXd & q, double alpha);

/// Value-only version of policy_objective.
double policy_objective(const Eigen::VectorXd & pi, const Eigen::VectorXd & q, double alpha);

double entropy(const Eigen::VectorXd & pi);

struct TemperatureLoss
{
  double value;     ///< -alpha (target - entropy)
  double d_alpha;   ///< dL/dalpha = entropy - target
};

TemperatureLoss temperature_loss(double alpha, double entropy, double target_entropy);

/// Target entropy for a decision over `candidates` options: scale * ln(candidates).
double target_entropy(std::size_t candidates, double scale);

struct Triplet
{
  int sampled;   ///< a-hat ~ pi
  int positive;  ///< argmax of the chosen Q estimate
  int negative;  ///< ~ pi, distinct from both
};

/// Builds <a-hat, a+, a->. With probability `epsilon` a+ comes from
/// `q_online`, otherwise from `q_target()` (evaluated only when needed).
/// a- is drawn from pi conditioned on a- not in {a-hat, a+}, which has the
/// same law as redrawing from pi until it differs from both. Returns nullopt
/// with fewer than three candidates.
std::optional<Triplet> build_triplet(
  const Eigen::VectorXd & pi, const Eigen::VectorXd & q_online,
  const std::function<Eigen::VectorXd()> & q_target, double epsilon, std::mt19937_64 & rng);

std::optional<Triplet> build_triplet(
  const Eigen::VectorXd & pi, const Eigen::VectorXd & q_online,
  const Eigen::VectorXd & q_target, double epsilon, std::mt19937_64 & rng);

/// ||f(a+) - f(a-hat)|| - ||f(a-) - f(a-hat)|| + margin, clamped at zero when
/// `clamp` is set. Features are 1 x d rows.
nn::Tensor contrastive_loss(
  const nn::Tensor & sampled, const nn::Tensor & positive, const nn::Tensor & negative,
  double margin, bool clamp = true);

double contrastive_loss(
  const Eigen::VectorXd & sampled, const Eigen::VectorXd & positive,
  const Eigen::VectorXd & negative, double margin, bool clamp = true);

/// Index of the largest entry; ties go to the lowest index.
int argmax(const Eigen::VectorXd & v);

/// Draws an index from a probability vector.
int sample_index(const Eigen::VectorXd & pi, std::mt19937_64 & rng);

}  // namespace hiernav::train

#endif  // HIERNAV_TRAIN_LOSSES_HPP_
