#include "hiernav/nn/networks.hpp"

namespace hiernav::nn
{

namespace
{

Mask visible(Eigen::Index rows, Eigen::Index cols)
{
  return Mask::Zero(rows, cols);
}

}  // namespace

ViewpointEncoder ViewpointEncoder::create(
  ParameterStore & store, const std::string & name, const NetworkConfig & config, std::mt19937_64 & rng)
{
  ViewpointEncoder e;
  e.embed = Linear::create(store, name + ".embed", config.feature_dim, config.embed_dim, rng);
  for (int l = 0; l < config.encoder_layers; ++l) {
    e.layers.push_back(
      AttentionBlock::create(store, name + ".layer" + std::to_string(l), config.embed_dim, config.ff_hidden, rng));
  }
  e.final_norm = LayerNorm::create(store, name + ".final_norm", config.embed_dim);
  return e;
}

Tensor ViewpointEncoder::forward(
  Tape & tape, const ParameterStore & store, const Tensor & features, const Mask & mask) const
{
  Tensor h = embed.forward(tape, store, features);
  for (const auto & layer : layers) {
    h = layer.forward(tape, store, h, h, mask);
  }
  return final_norm.forward(tape, store, h);
}

PolicyNet::PolicyNet(const NetworkConfig & config)
: config_(config)
{
  std::mt19937_64 rng(config.seed);
  const int d = config.embed_dim;
  encoder_ = ViewpointEncoder::create(params_, "encoder", config, rng);
  beacon_decoder_ = AttentionBlock::create(params_, "beacon_decoder", d, config.ff_hidden, rng);
  beacon_pointer_ = Pointer::create(params_, "beacon_pointer", d, config.pointer_clip, rng);
  waypoint_decoder_ = AttentionBlock::create(params_, "waypoint_decoder", d, config.ff_hidden, rng);
  candidate_decoder_ = AttentionBlock::create(params_, "candidate_decoder", d, config.ff_hidden, rng);
  waypoint_pointer_ = Pointer::create(params_, "waypoint_pointer", d, config.pointer_clip, rng);
}

Tensor PolicyNet::encode(Tape & tape, const graph::Observation & obs) const
{
  if (obs.feature_dim() != config_.feature_dim) {
    throw std::invalid_argument("observation feature width does not match the network");
  }
  return encoder_.forward(tape, params_, tape.constant(obs.features), obs.edge_mask());
}

BeaconHead PolicyNet::beacon_head(Tape & tape, const Tensor & encoded, const graph::Observation & obs) const
{
  if (obs.beacons.empty()) {
    throw NoBeaconError("observation has no beacon");
  }
  const Tensor robot = gather_rows(encoded, {obs.current});
  const Tensor decoded = beacon_decoder_.forward(tape, params_, robot, encoded, visible(1, encoded.rows()));
  const Tensor beacons = gather_rows(encoded, obs.beacons);
  return {beacon_pointer_.log_probs(tape, params_, decoded, beacons), decoded};
}

Tensor PolicyNet::candidate_features(Tape & tape, const Tensor & encoded, const graph::Observation & obs) const
{
  if (obs.neighbors.empty()) {
    throw NoActionError("current node has no neighbour");
  }
  const Tensor neighbours = gather_rows(encoded, obs.neighbors);
  return candidate_decoder_.forward(
    tape, params_, neighbours, encoded, visible(neighbours.rows(), encoded.rows()));
}

WaypointHead PolicyNet::waypoint_head(
  Tape & tape, const Tensor & encoded, const Tensor & candidates,
  const graph::Observation & obs, int beacon_slot) const
{
  if (beacon_slot < 0 || beacon_slot >= static_cast<int>(obs.beacons.size())) {
    throw NoBeaconError("beacon slot out of range");
  }
  const Tensor beacon = gather_rows(encoded, {obs.beacons[beacon_slot]});
  const Tensor decoded = waypoint_decoder_.forward(tape, params_, beacon, encoded, visible(1, encoded.rows()));
  return {waypoint_pointer_.log_probs(tape, params_, decoded, candidates), decoded};
}

CriticNet::CriticNet(const NetworkConfig & config)
: config_(config)
{
  std::mt19937_64 rng(config.seed);
  const int d = config.embed_dim;
  encoder_ = ViewpointEncoder::create(params_, "encoder", config, rng);
  beacon_decoder_ = AttentionBlock::create(params_, "beacon_decoder", d, config.ff_hidden, rng);
  candidate_decoder_ = AttentionBlock::create(params_, "candidate_decoder", d, config.ff_hidden, rng);
  head_hidden_ = Linear::create(params_, "q_head.hidden", 2 * d, d, rng);
  head_out_ = Linear::create(params_, "q_head.out", d, 1, rng);
}

Tensor CriticNet::encode(Tape & tape, const graph::Observation & obs) const
{
  if (obs.feature_dim() != config_.feature_dim) {
    throw std::invalid_argument("observation feature width does not match the network");
  }
  return encoder_.forward(tape, params_, tape.constant(obs.features), obs.edge_mask());
}

Tensor CriticNet::candidate_features(Tape & tape, const Tensor & encoded, const graph::Observation & obs) const
{
  if (obs.neighbors.empty()) {
    throw NoActionError("current node has no neighbour");
  }
  const Tensor neighbours = gather_rows(encoded, obs.neighbors);
  return candidate_decoder_.forward(
    tape, params_, neighbours, encoded, visible(neighbours.rows(), encoded.rows()));
}

Tensor CriticNet::decoded_beacon(
  Tape & tape, const Tensor & encoded, const graph::Observation & obs, int beacon_slot) const
{
  if (beacon_slot < 0 || beacon_slot >= static_cast<int>(obs.beacons.size())) {
    throw NoBeaconError("beacon slot out of range");
  }
  const Tensor beacon = gather_rows(encoded, {obs.beacons[beacon_slot]});
  return beacon_decoder_.forward(tape, params_, beacon, encoded, visible(1, encoded.rows()));
}

Tensor CriticNet::q_values(
  Tape & tape, const Tensor & encoded, const Tensor & candidates,
  const graph::Observation & obs, int beacon_slot) const
{
  const int d = config_.embed_dim;
  const Tensor beacon = decoded_beacon(tape, encoded, obs, beacon_slot);
  const Tensor weight = tape.param(params_, head_hidden_.weight);
  const Tensor beacon_part = add(
    matmul(beacon, row_block(weight, 0, d)), tape.param(params_, head_hidden_.bias));
  const Tensor hidden = relu(add_row(matmul(candidates, row_block(weight, d, d)), beacon_part));
  return head_out_.forward(tape, params_, hidden);
}

Tensor CriticNet::q(Tape & tape, const graph::Observation & obs, int beacon_slot, int waypoint_slot) const
{
  const Tensor encoded = encode(tape, obs);
  const Tensor candidates = candidate_features(tape, encoded, obs);
  if (waypoint_slot < 0 || waypoint_slot >= candidates.rows()) {
    throw NoActionError("waypoint slot out of range");
  }
  const Tensor joint = concat_cols(
    decoded_beacon(tape, encoded, obs, beacon_slot), gather_rows(candidates, {waypoint_slot}));
  return head_out_.forward(tape, params_, relu(head_hidden_.forward(tape, params_, joint)));
}

Eigen::VectorXd probabilities(const Tensor & log_probs)
{
  return log_probs.value().row(0).transpose().array().exp();
}

}  // namespace hiernav::nn
