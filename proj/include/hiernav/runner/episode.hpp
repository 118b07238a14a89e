#ifndef HIERNAV_RUNNER_EPISODE_HPP_
#define HIERNAV_RUNNER_EPISODE_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hiernav/graph/observation.hpp"
#include "hiernav/nn/networks.hpp"
#include "hiernav/train/replay_buffer.hpp"
#include "hiernav/train/trainer.hpp"
#include "hiernav/world/grid.hpp"

namespace hiernav::runner
{

enum class Task { Exploration, Navigation };
enum class PlannerKind { Learned, NearestFrontier, ReplanNavigate, Random };

std::string to_string(Task task);
std::string to_string(PlannerKind planner);
/// Throw ConfigError on unknown names.
Task parse_task(const std::string & name);
PlannerKind parse_planner(const std::string & name);

struct EpisodeConfig
{
  Task task{Task::Exploration};
  double sensor_range{20.0};
  int max_steps{128};
  graph::Lattice lattice{};
  int k{20};
  /// Beacon aggregation radius in meters; <= 0 means half the sensor range.
  double beacon_radius{0.0};
  std::uint64_t seed{0};
  double completion{0.99};
  double step_penalty{0.5};
  double done_bonus{20.0};
  /// Move cap for the cell-by-cell baselines; <= 0 means 8 x free cells.
  int grid_step_cap{0};
  /// Learned policy takes the most probable action; training rollouts sample.
  bool greedy{true};
  /// Measure per-step compute time (otherwise reported as 0).
  bool timing{false};
  /// Count belief/ground-truth line-of-sight violations of the graph.
  bool validate{false};

  double radius() const {return beacon_radius > 0.0 ? beacon_radius : sensor_range / 2.0;}
  /// Throws ConfigError.
  void check() const;
};

struct StepRecord
{
  int step{0};
  world::Point pose;       ///< pose after the move
  int beacon{-1};          ///< lattice id of the chosen beacon; -1 for grid planners
  int waypoint{-1};        ///< lattice id (graph planners) or cell index (grid planners)
  double reward{0.0};
  double distance{0.0};    ///< length of the traversed segment
};

struct EpisodeMetrics
{
  double distance{0.0};
  int steps{0};
  bool success{false};
  double coverage{0.0};
  double compute_s{0.0};   ///< mean per-step compute time
  std::string failure;     ///< empty unless the episode aborted
};

/// Reward for one exploration step.
double exploration_reward(int newly_free_cells, bool completed, const EpisodeConfig & config, double cell_size);
/// Reward for one navigation step; geodesic distances to the target in meters.
double navigation_reward(double previous_geodesic, double next_geodesic, bool arrived, const EpisodeConfig & config);

/// Environment state of a graph-based episode (learned or random planner).
struct EpisodeState
{
  const world::GroundTruthMap * truth{nullptr};
  EpisodeConfig config;
  world::BeliefMap belief{world::GridShape{}};
  world::Point pose;
  std::optional<world::Point> target;
  double arrival_radius{0.0};
  std::vector<double> geodesic;  ///< meters to the target per cell (navigation)
  std::vector<bool> visited;     ///< per lattice id
  graph::ViewpointGraph graph;
  graph::PlanningSet planning;
  std::shared_ptr<const graph::Observation> observation;
  int step{0};
  double distance{0.0};
  bool done{false};
  bool success{false};
  bool truncated{false};
  std::string failure;
  int edge_violations{0};       ///< graph edges failing belief line of sight
  int traversal_violations{0};  ///< traversed edges failing ground-truth line of sight

  int current() const {return observation ? observation->current : -1;}
  double coverage() const;
  double geodesic_at(const world::Point & p) const;
};

/// Senses from the start cell, snaps to the nearest visible viewpoint and
/// builds the first observation. Throws ConfigError for a navigation task on
/// a map without target.
EpisodeState start_episode(const world::GroundTruthMap & truth, const EpisodeConfig & config);

struct StepResult
{
  StepRecord record;
  train::Transition transition;
};

/// Moves along the edge to the chosen neighbour, senses, rebuilds the graph
/// and planning set, and scores the step. Throws std::invalid_argument when
/// the decision does not index a beacon and a neighbour of the observation.
StepResult step_episode(EpisodeState & state, const train::Decision & decision);

struct PlannerSpec
{
  PlannerKind kind{PlannerKind::Random};
  const nn::PolicyNet * policy{nullptr};
};

struct EpisodeHooks
{
  std::function<void(const train::Transition &)> on_transition;
  std::ostream * debug{nullptr};  ///< JSON-lines graph dump, one record per step
};

struct EpisodeResult
{
  EpisodeMetrics metrics;
  std::vector<StepRecord> records;
  world::Point start_pose;
  world::BeliefMap belief{world::GridShape{}};
  std::vector<world::Point> beacons;  ///< beacons of the final planning set
  int edge_violations{0};
  int traversal_violations{0};
};

/// Runs one episode to completion or the step cap. Deterministic for a fixed
/// config seed unless timing is enabled.
EpisodeResult run_episode(
  const world::GroundTruthMap & truth, const PlannerSpec & planner, const EpisodeConfig & config,
  const EpisodeHooks & hooks = {});

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_EPISODE_HPP_
