#include "hiernav/graph/observation.hpp"

#include <algorithm>
#include <cmath>

namespace hiernav::graph
{

EdgeMask Observation::edge_mask() const
{
  const int n = node_count();
  EdgeMask mask = EdgeMask::Ones(n, n);
  for (int i = 0; i < n; ++i) {
    mask(i, i) = 0;
    for (int j : adjacency[i]) {
      mask(i, j) = 0;
    }
  }
  return mask;
}

int node_at(const ViewpointGraph & graph, const world::Point & pose)
{
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (world::distance(graph.position(static_cast<int>(i)), pose) < 1e-9) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

Observation assemble_observation(
  const ViewpointGraph & graph, const PlanningSet & planning, const world::Point & pose,
  const std::optional<world::Point> & target, const world::GridShape & shape)
{
  if (graph.size() == 0) {
    throw ObservationError("viewpoint graph is empty");
  }
  const int current = node_at(graph, pose);
  if (current < 0) {
    throw ObservationError("robot pose is not aligned with a graph node");
  }
  const int n = static_cast<int>(graph.size());
  const double diagonal = shape.diagonal_m();
  int utility_norm = 1;
  for (int u : planning.utility) {
    utility_norm = std::max(utility_norm, u);
  }

  Observation obs;
  obs.features.setZero(n, target ? kNavigationFeatures : kExplorationFeatures);
  for (int i = 0; i < n; ++i) {
    const world::Point & p = graph.position(i);
    obs.features(i, 0) = (p.x - pose.x) / diagonal;
    obs.features(i, 1) = (p.y - pose.y) / diagonal;
    obs.features(i, 2) = static_cast<double>(planning.utility[i]) / utility_norm;
    obs.features(i, 3) = planning.visited[i] ? 1.0 : 0.0;
    obs.features(i, 4) = planning.beacon[i] ? 1.0 : 0.0;
    if (target) {
      const double tx = (target->x - p.x) / diagonal;
      const double ty = (target->y - p.y) / diagonal;
      obs.features(i, 5) = tx;
      obs.features(i, 6) = ty;
      obs.features(i, 7) = std::hypot(tx, ty);
    }
    if (planning.beacon[i]) {
      obs.beacons.push_back(i);
    }
  }
  obs.adjacency = graph.adjacency;
  obs.current = current;
  obs.neighbors = graph.adjacency[current];
  return obs;
}

nlohmann::json debug_record(
  int step, const ViewpointGraph & graph, const PlanningSet & planning, int current)
{
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  nlohmann::json beacons = nlohmann::json::array();
  nlohmann::json visited = nlohmann::json::array();
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto & p = graph.position(static_cast<int>(i));
    nodes.push_back({p.x, p.y});
    for (int j : graph.adjacency[i]) {
      if (static_cast<int>(i) < j) {
        edges.push_back({static_cast<int>(i), j});
      }
    }
    if (planning.beacon[i]) {
      beacons.push_back(static_cast<int>(i));
    }
    if (planning.visited[i]) {
      visited.push_back(static_cast<int>(i));
    }
  }
  return {
    {"step", step},
    {"current", current},
    {"nodes", std::move(nodes)},
    {"edges", std::move(edges)},
    {"utility", planning.utility},
    {"beacons", std::move(beacons)},
    {"visited", std::move(visited)},
  };
}

}  // namespace hiernav::graph
