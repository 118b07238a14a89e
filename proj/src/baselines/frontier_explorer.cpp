#include "hiernav/baselines/frontier_explorer.hpp"

#include <cmath>
#include <limits>

#include "hiernav/baselines/astar.hpp"
#include "hiernav/graph/planning_set.hpp"

namespace hiernav::baselines
{

std::optional<world::CellIndex> nearest_frontier_step(
  const world::BeliefMap & belief, world::CellIndex pose)
{
  const graph::FrontierSet frontiers = graph::detect_frontiers(belief);
  if (frontiers.empty()) {
    return std::nullopt;
  }
  const Traversability map = Traversability::from_belief(belief, false);
  const std::vector<double> dist = distance_field(pose, map);

  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const world::CellIndex & f : frontiers.cells) {
    if (f == pose) {
      continue;
    }
    const double d = dist[belief.shape().index(f)];
    // Frontiers are visited in ascending index order, so a near-tie keeps the lower index.
    if (std::isfinite(d) && d < best_cost - 1e-9) {
      best_cost = d;
      best = belief.shape().index(f);
    }
  }
  if (best < 0) {
    return std::nullopt;
  }
  const GridPath path = astar(pose, belief.shape().cell(best), map);
  return path.cells[1];
}

}  // namespace hiernav::baselines
