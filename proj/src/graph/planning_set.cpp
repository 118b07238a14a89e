#include "hiernav/graph/planning_set.hpp"

#include <algorithm>

#include "hiernav/world/line_of_sight.hpp"

namespace hiernav::graph
{

FrontierSet detect_frontiers(const world::BeliefMap & belief)
{
  FrontierSet frontiers;
  const world::GridShape & shape = belief.shape();
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};
  for (int i = 0; i < shape.cell_count(); ++i) {
    if (belief.at(i) != world::Belief::Free) {
      continue;
    }
    const world::CellIndex c = shape.cell(i);
    for (int k = 0; k < 4; ++k) {
      const world::CellIndex n{c.x + dx[k], c.y + dy[k]};
      if (shape.contains(n) && belief.at(n) == world::Belief::Unknown) {
        frontiers.cells.push_back(c);
        frontiers.points.push_back(shape.center(c));
        break;
      }
    }
  }
  return frontiers;
}

std::vector<int> compute_utilities(
  const std::vector<world::Point> & nodes, const FrontierSet & frontiers,
  const world::BeliefMap & belief, double range)
{
  std::vector<int> utility(nodes.size(), 0);
  const double range_sq = range * range + 1e-9;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const world::Point & f : frontiers.points) {
      const double dx = f.x - nodes[i].x;
      const double dy = f.y - nodes[i].y;
      if (dx * dx + dy * dy <= range_sq && world::line_of_sight(nodes[i], f, belief)) {
        ++utility[i];
      }
    }
  }
  return utility;
}

std::vector<int> aggregate_beacons(
  const std::vector<int> & candidates, const std::vector<world::Point> & nodes,
  const world::BeliefMap & belief, double radius)
{
  std::vector<int> order = candidates;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<bool> covered(order.size(), false);
  std::vector<int> beacons;
  for (std::size_t a = 0; a < order.size(); ++a) {
    if (covered[a]) {
      continue;
    }
    const int v = order[a];
    beacons.push_back(v);
    covered[a] = true;
    for (std::size_t b = 0; b < order.size(); ++b) {
      if (covered[b]) {
        continue;
      }
      const world::Point & p = nodes[order[b]];
      if (world::distance(nodes[v], p) <= radius + 1e-9 &&
        world::line_of_sight(nodes[v], p, belief))
      {
        covered[b] = true;
      }
    }
  }
  return beacons;
}

}  // namespace hiernav::graph
