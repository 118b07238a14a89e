#ifndef HIERNAV_NN_NETWORKS_HPP_
#define HIERNAV_NN_NETWORKS_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hiernav/graph/observation.hpp"
#include "hiernav/nn/layers.hpp"

namespace hiernav::nn
{

struct NetworkConfig
{
  int feature_dim{graph::kExplorationFeatures};
  int embed_dim{128};
  int encoder_layers{6};
  int ff_hidden{256};
  double pointer_clip{10.0};
  std::uint64_t seed{0};
};

/// Raised when the observation has no beacon to choose from.
class NoBeaconError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when the current node has no neighbour to move to.
class NoActionError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Embedding followed by masked self-attention layers over the viewpoint graph.
struct ViewpointEncoder
{
  Linear embed;
  std::vector<AttentionBlock> layers;
  LayerNorm final_norm;

  static ViewpointEncoder create(ParameterStore & store, const std::string & name, const NetworkConfig & config, std::mt19937_64 & rng);
  /// N x d encoded features.
  Tensor forward(Tape & tape, const ParameterStore & store, const Tensor & features, const Mask & mask) const;
};

struct BeaconHead
{
  Tensor log_probs;       ///< 1 x beacons
  Tensor decoded_robot;   ///< 1 x d, the robot feature after cross-attention
};

struct WaypointHead
{
  Tensor log_probs;       ///< 1 x neighbours
  Tensor decoded_beacon;  ///< 1 x d
};

/// Hierarchical policy: the beacon decoder picks a beacon from the robot's
/// decoded feature; the waypoint decoder picks a neighbour of the current
/// node from the selected beacon's decoded feature.
class PolicyNet
{
public:
  explicit PolicyNet(const NetworkConfig & config);

  const NetworkConfig & config() const {return config_;}
  ParameterStore & params() {return params_;}
  const ParameterStore & params() const {return params_;}

  Tensor encode(Tape & tape, const graph::Observation & obs) const;
  BeaconHead beacon_head(Tape & tape, const Tensor & encoded, const graph::Observation & obs) const;
  /// Decoded feature of every neighbour (neighbours x d), the action
  /// representation used by the contrastive objective.
  Tensor candidate_features(Tape & tape, const Tensor & encoded, const graph::Observation & obs) const;
  WaypointHead waypoint_head(
    Tape & tape, const Tensor & encoded, const Tensor & candidates,
    const graph::Observation & obs, int beacon_slot) const;

private:
  NetworkConfig config_;
  ParameterStore params_;
  ViewpointEncoder encoder_;
  AttentionBlock beacon_decoder_;
  Pointer beacon_pointer_;
  AttentionBlock waypoint_decoder_;
  AttentionBlock candidate_decoder_;
  Pointer waypoint_pointer_;
};

/// Hierarchical joint critic: Q(o, (beacon, waypoint)) from the decoded
/// beacon feature concatenated with the decoded waypoint feature.
class CriticNet
{
public:
  explicit CriticNet(const NetworkConfig & config);

  const NetworkConfig & config() const {return config_;}
  ParameterStore & params() {return params_;}
  const ParameterStore & params() const {return params_;}

  Tensor encode(Tape & tape, const graph::Observation & obs) const;
  Tensor candidate_features(Tape & tape, const Tensor & encoded, const graph::Observation & obs) const;
  /// Q for every neighbour given the beacon, as a neighbours x 1 column.
  Tensor q_values(
    Tape & tape, const Tensor & encoded, const Tensor & candidates,
    const graph::Observation & obs, int beacon_slot) const;
  /// Scalar Q(o, (beacon, waypoint)) computed through the concatenation path.
  Tensor q(Tape & tape, const graph::Observation & obs, int beacon_slot, int waypoint_slot) const;

  /// Index of the final head layer (zeroing it makes every Q zero).
  const Linear & output_layer() const {return head_out_;}

private:
  Tensor decoded_beacon(Tape & tape, const Tensor & encoded, const graph::Observation & obs, int beacon_slot) const;

  NetworkConfig config_;
  ParameterStore params_;
  ViewpointEncoder encoder_;
  AttentionBlock beacon_decoder_;
  AttentionBlock candidate_decoder_;
  Linear head_hidden_;  ///< (2d) -> d
  Linear head_out_;     ///< d -> 1
};

/// Probabilities from log-probabilities (plain values, no tape).
Eigen::VectorXd probabilities(const Tensor & log_probs);

}  // namespace hiernav::nn

#endif  // HIERNAV_NN_NETWORKS_HPP_
