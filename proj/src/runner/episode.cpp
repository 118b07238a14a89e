#include "hiernav/runner/episode.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "hiernav/baselines/astar.hpp"
#include "hiernav/baselines/frontier_explorer.hpp"
#include "hiernav/baselines/replan.hpp"
#include "hiernav/graph/planning_set.hpp"
#include "hiernav/runner/config.hpp"
#include "hiernav/train/losses.hpp"
#include "hiernav/world/line_of_sight.hpp"
#include "hiernav/world/sensing.hpp"

namespace hiernav::runner
{

using world::CellIndex;
using world::Point;

std::string to_string(Task task)
{
  return task == Task::Exploration ? "exploration" : "navigation";
}

std::string to_string(PlannerKind planner)
{
  switch (planner) {
    case PlannerKind::Learned: return "learned";
    case PlannerKind::NearestFrontier: return "nearest_frontier";
    case PlannerKind::ReplanNavigate: return "replan_navigate";
    case PlannerKind::Random: return "random";
  }
  return "unknown";
}

Task parse_task(const std::string & name)
{
  if (name == "exploration" || name == "explore") {
    return Task::Exploration;
  }
  if (name == "navigation" || name == "navigate") {
    return Task::Navigation;
  }
  throw ConfigError("unknown task '" + name + "'");
}

PlannerKind parse_planner(const std::string & name)
{
  for (PlannerKind p : {PlannerKind::Learned, PlannerKind::NearestFrontier, PlannerKind::ReplanNavigate, PlannerKind::Random}) {
    if (to_string(p) == name) {
      return p;
    }
  }
  throw ConfigError("unknown planner '" + name + "'");
}

void EpisodeConfig::check() const
{
  if (!(sensor_range > 0.0)) {
    throw ConfigError("sensor range must be positive");
  }
  if (max_steps < 1) {
    throw ConfigError("max steps must be at least 1");
  }
  if (lattice.columns < 1 || lattice.rows < 1) {
    throw ConfigError("lattice dimensions must be positive");
  }
  if (k < 1) {
    throw ConfigError("k must be at least 1");
  }
  if (!(completion > 0.0 && completion <= 1.0)) {
    throw ConfigError("completion threshold must lie in (0, 1]");
  }
}

double exploration_reward(int newly_free_cells, bool completed, const EpisodeConfig & config, double cell_size)
{
  const double cells_in_range = config.sensor_range / cell_size;
  const double area = cells_in_range * cells_in_range;
  return newly_free_cells / area - config.step_penalty + (completed ? config.done_bonus : 0.0);
}

double navigation_reward(double previous_geodesic, double next_geodesic, bool arrived, const EpisodeConfig & config)
{
  return (previous_geodesic - next_geodesic) / config.sensor_range - config.step_penalty +
         (arrived ? config.done_bonus : 0.0);
}

double EpisodeState::coverage() const
{
  return world::coverage_fraction(belief, *truth);
}

double EpisodeState::geodesic_at(const Point & p) const
{
  return geodesic[belief.shape().index(belief.shape().cell_at(p))];
}

namespace
{

int count_free(const std::vector<CellIndex> & cells, const world::GroundTruthMap & truth)
{
  int n = 0;
  for (CellIndex c : cells) {
    n += truth.occupied(c) ? 0 : 1;
  }
  return n;
}

/// Rebuilds graph, planning set and observation from the belief, then
/// evaluates the termination conditions.
void refresh(EpisodeState & s)
{
  const EpisodeConfig & cfg = s.config;
  s.graph = graph::build_viewpoint_graph(s.belief, cfg.lattice, cfg.k);
  if (cfg.validate) {
    for (std::size_t i = 0; i < s.graph.size(); ++i) {
      for (int j : s.graph.adjacency[i]) {
        if (static_cast<int>(i) < j && !world::line_of_sight(s.graph.position(i), s.graph.position(j), s.belief)) {
          ++s.edge_violations;
        }
      }
    }
  }
  const std::size_t n = s.graph.size();
  const graph::FrontierSet frontiers = graph::detect_frontiers(s.belief);
  s.planning.utility = graph::compute_utilities(s.graph.nodes.positions, frontiers, s.belief, cfg.sensor_range);
  s.planning.visited.assign(n, false);
  s.planning.beacon.assign(n, false);
  std::vector<int> informative;
  for (std::size_t i = 0; i < n; ++i) {
    s.planning.visited[i] = s.visited[s.graph.nodes.lattice_ids[i]];
    if (s.planning.utility[i] > 0) {
      informative.push_back(static_cast<int>(i));
    }
  }
  for (int b : graph::aggregate_beacons(informative, s.graph.nodes.positions, s.belief, cfg.radius())) {
    s.planning.beacon[b] = true;
  }
  if (s.target && informative.empty() && n > 0) {
    // No informative viewpoint left: steer by the node closest to the target.
    int best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (world::distance(s.graph.position(i), *s.target) < world::distance(s.graph.position(best), *s.target)) {
        best = static_cast<int>(i);
      }
    }
    s.planning.beacon[best] = true;
  }
  s.observation = std::make_shared<const graph::Observation>(
    graph::assemble_observation(s.graph, s.planning, s.pose, s.target, s.belief.shape()));

  if (cfg.task == Task::Exploration) {
    const bool covered = s.coverage() >= cfg.completion;
    if (covered || informative.empty()) {
      s.done = true;
      s.success = covered;
    }
  } else if (world::distance(s.pose, *s.target) <= s.arrival_radius) {
    s.done = true;
    s.success = true;
  }
  if (!s.done && s.observation->neighbors.empty()) {
    s.done = true;
    s.failure = "isolated node";
  }
  if (!s.done && s.step >= cfg.max_steps) {
    s.done = true;
    s.truncated = true;
  }
}

double arrival_radius(const world::GroundTruthMap & truth, const graph::Lattice & lattice, const Point & target)
{
  const world::GridShape & shape = truth.shape();
  double nearest = std::numeric_limits<double>::infinity();
  for (int id = 0; id < lattice.size(); ++id) {
    const Point p = lattice.position(id, shape);
    const CellIndex c = shape.cell_at(p);
    if (shape.contains(c) && truth.reachable()[shape.index(c)]) {
      nearest = std::min(nearest, world::distance(p, target));
    }
  }
  return std::max(shape.cell_size * std::sqrt(2.0), nearest + 1e-9);
}

}  // namespace

EpisodeState start_episode(const world::GroundTruthMap & truth, const EpisodeConfig & config)
{
  config.check();
  EpisodeState s;
  s.truth = &truth;
  s.config = config;
  const world::GridShape & shape = truth.shape();
  s.belief = world::BeliefMap(shape);
  s.visited.assign(config.lattice.size(), false);
  if (config.task == Task::Navigation) {
    if (!truth.target()) {
      throw ConfigError("navigation needs a map with a target");
    }
    s.target = shape.center(*truth.target());
    s.arrival_radius = arrival_radius(truth, config.lattice, *s.target);
    const std::vector<double> field = baselines::distance_field(
      *truth.target(), baselines::Traversability::from_truth(truth));
    s.geodesic.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
      s.geodesic[i] = field[i] * shape.cell_size;
    }
  }

  const Point origin = shape.center(truth.start());
  world::sense_and_update(origin, truth, s.belief, config.sensor_range);
  const graph::ViewpointSet nodes = graph::sample_viewpoints(s.belief, config.lattice);
  int snap = -1;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point & p = nodes.positions[i];
    if (!world::line_of_sight(origin, p, s.belief)) {
      continue;
    }
    if (snap < 0 || world::distance(origin, p) < world::distance(origin, nodes.positions[snap])) {
      snap = static_cast<int>(i);
    }
  }
  if (snap < 0) {
    s.pose = origin;
    s.done = true;
    s.failure = "no viewpoint visible from the start";
    return s;
  }
  s.pose = nodes.positions[snap];
  s.visited[nodes.lattice_ids[snap]] = true;
  world::sense_and_update(s.pose, truth, s.belief, config.sensor_range);
  refresh(s);
  return s;
}

StepResult step_episode(EpisodeState & s, const train::Decision & decision)
{
  if (s.done || !s.observation) {
    throw std::invalid_argument("step_episode: episode is over");
  }
  const graph::Observation & obs = *s.observation;
  if (decision.beacon < 0 || decision.beacon >= static_cast<int>(obs.beacons.size()) ||
    decision.waypoint < 0 || decision.waypoint >= static_cast<int>(obs.neighbors.size()))
  {
    throw std::invalid_argument("step_episode: decision outside the candidate sets");
  }
  const int next = obs.neighbors[decision.waypoint];
  const Point from = s.pose;
  const Point to = s.graph.position(next);
  const int waypoint_id = s.graph.nodes.lattice_ids[next];
  const int beacon_id = s.graph.nodes.lattice_ids[obs.beacons[decision.beacon]];
  if (s.config.validate && !world::line_of_sight(from, to, *s.truth)) {
    ++s.traversal_violations;
  }
  const double previous_geodesic = s.target ? s.geodesic_at(from) : 0.0;

  StepResult result;
  result.transition.observation = s.observation;
  result.transition.beacon = decision.beacon;
  result.transition.waypoint = decision.waypoint;

  const double increment = world::distance(from, to);
  s.pose = to;
  s.distance += increment;
  ++s.step;
  s.visited[waypoint_id] = true;
  const std::vector<CellIndex> revealed = world::sense_and_update(s.pose, *s.truth, s.belief, s.config.sensor_range);
  refresh(s);

  double r = 0.0;
  if (s.config.task == Task::Exploration) {
    r = exploration_reward(count_free(revealed, *s.truth), s.success, s.config, s.belief.shape().cell_size);
  } else {
    r = navigation_reward(previous_geodesic, s.geodesic_at(s.pose), s.success, s.config);
  }
  result.transition.reward = r;
  result.transition.next_observation = s.observation;
  result.transition.done = s.done && !s.truncated;
  result.record = StepRecord{s.step, s.pose, beacon_id, waypoint_id, r, increment};
  return result;
}

namespace
{

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

train::Decision random_decision(const graph::Observation & obs, std::mt19937_64 & rng)
{
  std::uniform_int_distribution<int> beacon(0, static_cast<int>(obs.beacons.size()) - 1);
  std::uniform_int_distribution<int> waypoint(0, static_cast<int>(obs.neighbors.size()) - 1);
  train::Decision d;
  d.beacon = beacon(rng);
  d.waypoint = waypoint(rng);
  return d;
}

EpisodeResult run_graph_episode(
  const world::GroundTruthMap & truth, const PlannerSpec & planner, const EpisodeConfig & config,
  const EpisodeHooks & hooks)
{
  if (planner.kind == PlannerKind::Learned) {
    if (planner.policy == nullptr) {
      throw ConfigError("learned planner needs a policy checkpoint");
    }
    const int expected = config.task == Task::Navigation ? graph::kNavigationFeatures : graph::kExplorationFeatures;
    if (planner.policy->config().feature_dim != expected) {
      throw ConfigError("policy feature width does not match the task");
    }
  }
  std::mt19937_64 rng(config.seed);
  EpisodeState s = start_episode(truth, config);
  EpisodeResult result;
  result.start_pose = s.pose;
  double compute = 0.0;
  if (hooks.debug && s.observation) {
    *hooks.debug << graph::debug_record(0, s.graph, s.planning, s.current()).dump() << '\n';
  }
  while (!s.done) {
    const auto t0 = Clock::now();
    const train::Decision d = planner.kind == PlannerKind::Learned ?
      train::decide(*planner.policy, *s.observation, rng, config.greedy) :
      random_decision(*s.observation, rng);
    StepResult step = step_episode(s, d);
    compute += seconds_since(t0);
    result.records.push_back(step.record);
    if (hooks.on_transition) {
      hooks.on_transition(step.transition);
    }
    if (hooks.debug) {
      *hooks.debug << graph::debug_record(s.step, s.graph, s.planning, s.current()).dump() << '\n';
    }
  }
  result.metrics.distance = s.distance;
  result.metrics.steps = s.step;
  result.metrics.success = s.success;
  result.metrics.coverage = s.coverage();
  result.metrics.compute_s = config.timing && s.step > 0 ? compute / s.step : 0.0;
  result.metrics.failure = s.failure;
  for (std::size_t i = 0; i < s.planning.beacon.size(); ++i) {
    if (s.planning.beacon[i]) {
      result.beacons.push_back(s.graph.position(static_cast<int>(i)));
    }
  }
  result.edge_violations = s.edge_violations;
  result.traversal_violations = s.traversal_violations;
  result.belief = std::move(s.belief);
  return result;
}

EpisodeResult run_grid_episode(
  const world::GroundTruthMap & truth, const PlannerSpec & planner, const EpisodeConfig & config)
{
  config.check();
  const bool navigation = planner.kind == PlannerKind::ReplanNavigate;
  if (navigation != (config.task == Task::Navigation)) {
    throw ConfigError(to_string(planner.kind) + " does not solve the " + to_string(config.task) + " task");
  }
  if (navigation && !truth.target()) {
    throw ConfigError("navigation needs a map with a target");
  }
  const world::GridShape & shape = truth.shape();
  const int cap = config.grid_step_cap > 0 ? config.grid_step_cap : 8 * truth.reachable_count();
  world::BeliefMap belief(shape);
  CellIndex pose = truth.start();
  world::sense_and_update(shape.center(pose), truth, belief, config.sensor_range);

  std::vector<double> geodesic;
  std::optional<baselines::ReplanNavigator> navigator;
  if (navigation) {
    navigator.emplace(*truth.target());
    geodesic = baselines::distance_field(*truth.target(), baselines::Traversability::from_truth(truth));
  }

  EpisodeResult result;
  result.start_pose = shape.center(pose);
  EpisodeMetrics & m = result.metrics;
  double compute = 0.0;
  while (true) {
    if (navigation ? pose == *truth.target() : world::coverage_fraction(belief, truth) >= config.completion) {
      m.success = true;
      break;
    }
    if (m.steps >= cap) {
      break;
    }
    const auto t0 = Clock::now();
    std::optional<CellIndex> next;
    try {
      next = navigation ? navigator->next(belief, pose) : baselines::nearest_frontier_step(belief, pose);
    } catch (const baselines::NoPathError &) {
      m.failure = "no path";
      break;
    }
    if (!next) {
      break;
    }
    ++m.steps;
    StepRecord record;
    record.step = m.steps;
    record.waypoint = shape.index(*next);
    int newly_free = 0;
    if (truth.occupied(*next)) {
      // Bumped into an obstacle the sensor had not seen: it is now known.
      belief.reveal(*next, world::Cell::Occupied);
    } else {
      record.distance = baselines::step_cost(pose, *next) * shape.cell_size;
      const double before = navigation ? geodesic[shape.index(pose)] * shape.cell_size : 0.0;
      pose = *next;
      newly_free = count_free(world::sense_and_update(shape.center(pose), truth, belief, config.sensor_range), truth);
      if (navigation) {
        const bool arrived = pose == *truth.target();
        record.reward = navigation_reward(before, geodesic[shape.index(pose)] * shape.cell_size, arrived, config);
      }
    }
    if (!navigation) {
      const bool covered = world::coverage_fraction(belief, truth) >= config.completion;
      record.reward = exploration_reward(newly_free, covered, config, shape.cell_size);
    } else if (record.distance == 0.0) {
      record.reward = -config.step_penalty;
    }
    compute += seconds_since(t0);
    record.pose = shape.center(pose);
    m.distance += record.distance;
    result.records.push_back(record);
  }
  m.coverage = world::coverage_fraction(belief, truth);
  m.compute_s = config.timing && m.steps > 0 ? compute / m.steps : 0.0;
  result.belief = std::move(belief);
  return result;
}

}  // namespace

EpisodeResult run_episode(
  const world::GroundTruthMap & truth, const PlannerSpec & planner, const EpisodeConfig & config,
  const EpisodeHooks & hooks)
{
  if (planner.kind == PlannerKind::NearestFrontier || planner.kind == PlannerKind::ReplanNavigate) {
    return run_grid_episode(truth, planner, config);
  }
  return run_graph_episode(truth, planner, config, hooks);
}

}  // namespace hiernav::runner
