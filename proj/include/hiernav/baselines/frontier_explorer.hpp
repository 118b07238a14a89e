#ifndef HIERNAV_BASELINES_FRONTIER_EXPLORER_HPP_
#define HIERNAV_BASELINES_FRONTIER_EXPLORER_HPP_

#include <optional>

#include "hiernav/world/grid.hpp"

namespace hiernav::baselines
{

/// Greedy frontier exploration: targets the frontier cell with the smallest
/// A* cost over known-free cells (ties to the lower cell index) and returns
/// the first move of that path. nullopt means no reachable frontier is left.
std::optional<world::CellIndex> nearest_frontier_step(
  const world::BeliefMap & belief, world::CellIndex pose);

}  // namespace hiernav::baselines

#endif  // HIERNAV_BASELINES_FRONTIER_EXPLORER_HPP_
