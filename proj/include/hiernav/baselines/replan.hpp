#ifndef HIERNAV_BASELINES_REPLAN_HPP_
#define HIERNAV_BASELINES_REPLAN_HPP_

#include <optional>
#include <vector>

#include "hiernav/baselines/astar.hpp"
#include "hiernav/world/grid.hpp"

namespace hiernav::baselines
{

/// Goal-directed navigation under the free-space assumption: plans with A*
/// on the belief treating unknown cells as traversable, follows the plan one
/// cell at a time and replans only when newly sensed obstacles invalidate the
/// remaining plan.
class ReplanNavigator
{
public:
  explicit ReplanNavigator(world::CellIndex target);

  /// Next cell to move to from `pose`, or nullopt when `pose` is the target.
  /// Throws NoPathError when the optimistic belief has no path left.
  std::optional<world::CellIndex> next(const world::BeliefMap & belief, world::CellIndex pose);

  /// Plans computed after the first one.
  int replans() const {return replans_;}

private:
  bool plan_valid(const Traversability & map, world::CellIndex pose) const;

  world::CellIndex target_;
  std::vector<world::CellIndex> plan_;  ///< remaining cells, plan_[0] is the current cell
  int replans_{0};
};

struct NavigationResult
{
  std::vector<world::CellIndex> trajectory;  ///< includes the start cell
  int straight_moves{0};
  int diagonal_moves{0};
  int replans{0};
  double cell_size{1.0};

  double cost() const;
};

/// Runs the replanning navigator from `start` to `target` with sensing of
/// `range` meters after every move. `initial_belief`, if given, seeds the
/// belief (e.g. fully revealed). Throws NoPathError if the target is unreachable.
NavigationResult replan_navigate(
  const world::GroundTruthMap & truth, world::CellIndex start, world::CellIndex target,
  double range, const world::BeliefMap * initial_belief = nullptr);

}  // namespace hiernav::baselines

#endif  // HIERNAV_BASELINES_REPLAN_HPP_
