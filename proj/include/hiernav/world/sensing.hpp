#ifndef HIERNAV_WORLD_SENSING_HPP_
#define HIERNAV_WORLD_SENSING_HPP_

#include <vector>

#include "hiernav/world/grid.hpp"

namespace hiernav::world
{

/// Sensor range used by the planner unless configured otherwise (meters).
inline constexpr double kDefaultSensorRange = 20.0;

/// True if the cell centre of `cell` is within `range` of `from` and the
/// segment between them touches no occupied cell other than `cell` itself.
bool visible(const Point & from, CellIndex cell, const GroundTruthMap & truth, double range);

/// Reveals every cell visible from `pose` (see `visible`). Returns the cells
/// that went from Unknown to known, in ascending cell index order.
std::vector<CellIndex> sense_and_update(
  const Point & pose, const GroundTruthMap & truth, BeliefMap & belief, double range);

/// Known-free reachable cells over all reachable free cells.
double coverage_fraction(const BeliefMap & belief, const GroundTruthMap & truth);

}  // namespace hiernav::world

#endif  // HIERNAV_WORLD_SENSING_HPP_
