#include "hiernav/baselines/replan.hpp"

#include <cmath>

#include "hiernav/world/sensing.hpp"

namespace hiernav::baselines
{

ReplanNavigator::ReplanNavigator(world::CellIndex target)
: target_(target)
{
}

bool ReplanNavigator::plan_valid(const Traversability & map, world::CellIndex pose) const
{
  if (plan_.empty() || !(plan_.front() == pose)) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < plan_.size(); ++i) {
    if (!move_allowed(map, plan_[i], plan_[i + 1])) {
      return false;
    }
  }
  return true;
}

std::optional<world::CellIndex> ReplanNavigator::next(
  const world::BeliefMap & belief, world::CellIndex pose)
{
  if (pose == target_) {
    return std::nullopt;
  }
  const Traversability map = Traversability::from_belief(belief, true);
  if (!plan_valid(map, pose)) {
    if (!plan_.empty()) {
      ++replans_;
    }
    plan_ = astar(pose, target_, map).cells;
  }
  plan_.erase(plan_.begin());
  return plan_.front();
}

double NavigationResult::cost() const
{
  return (straight_moves + std::sqrt(2.0) * diagonal_moves) * cell_size;
}

NavigationResult replan_navigate(
  const world::GroundTruthMap & truth, world::CellIndex start, world::CellIndex target,
  double range, const world::BeliefMap * initial_belief)
{
  world::BeliefMap belief = initial_belief ? *initial_belief : world::BeliefMap(truth.shape());
  NavigationResult result;
  result.cell_size = truth.cell_size();
  result.trajectory.push_back(start);
  world::sense_and_update(truth.shape().center(start), truth, belief, range);

  ReplanNavigator navigator(target);
  world::CellIndex pose = start;
  // Every replan is caused by at least one newly known occupied cell, so the
  // loop is bounded; the cap only guards against logic errors.
  const long cap = 8L * truth.shape().cell_count() * (truth.shape().cell_count() + 1);
  for (long iter = 0; iter < cap; ++iter) {
    const auto next = navigator.next(belief, pose);
    if (!next) {
      result.replans = navigator.replans();
      return result;
    }
    if (truth.occupied(*next)) {
      // Bump: the cell was never observed; learn it and replan.
      belief.reveal(*next, world::Cell::Occupied);
      continue;
    }
    if (pose.x != next->x && pose.y != next->y) {
      ++result.diagonal_moves;
    } else {
      ++result.straight_moves;
    }
    pose = *next;
    result.trajectory.push_back(pose);
    world::sense_and_update(truth.shape().center(pose), truth, belief, range);
  }
  throw NoPathError("replanning did not converge");
}

}  // namespace hiernav::baselines
