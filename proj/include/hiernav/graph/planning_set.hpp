#ifndef HIERNAV_GRAPH_PLANNING_SET_HPP_
#define HIERNAV_GRAPH_PLANNING_SET_HPP_

#include <vector>

#include "hiernav/world/grid.hpp"

namespace hiernav::graph
{

/// Known-free cells that border unknown space.
struct FrontierSet
{
  std::vector<world::CellIndex> cells;
  std::vector<world::Point> points;  ///< cell centres, co-indexed with `cells`

  std::size_t size() const {return cells.size();}
  bool empty() const {return cells.empty();}
};

/// Per-node attributes co-indexed with the viewpoint graph nodes.
struct PlanningSet
{
  std::vector<bool> visited;
  std::vector<int> utility;
  std::vector<bool> beacon;
};

/// Exactly the known-free cells with at least one 4-adjacent unknown cell,
/// in ascending cell index order.
FrontierSet detect_frontiers(const world::BeliefMap & belief);

/// Utility of each node: frontiers within `range` with conservative belief
/// line of sight from the node.
std::vector<int> compute_utilities(
  const std::vector<world::Point> & nodes, const FrontierSet & frontiers,
  const world::BeliefMap & belief, double range);

/// Greedy beacon aggregation over the nonzero-utility nodes `candidates`
/// (processed in ascending index order). An uncovered node becomes a beacon
/// and covers every candidate within `radius` that it can see. Returns the
/// beacon node indices in ascending order.
std::vector<int> aggregate_beacons(
  const std::vector<int> & candidates, const std::vector<world::Point> & nodes,
  const world::BeliefMap & belief, double radius);

}  // namespace hiernav::graph

#endif  // HIERNAV_GRAPH_PLANNING_SET_HPP_
