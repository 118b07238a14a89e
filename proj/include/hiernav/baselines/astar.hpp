#ifndef HIERNAV_BASELINES_ASTAR_HPP_
#define HIERNAV_BASELINES_ASTAR_HPP_

#include <stdexcept>
#include <vector>

#include "hiernav/world/grid.hpp"

namespace hiernav::baselines
{

class NoPathError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Boolean traversability over a grid, the map view searched by A*.
struct Traversability
{
  world::GridShape shape;
  std::vector<bool> free;

  bool passable(world::CellIndex c) const {return shape.contains(c) && free[shape.index(c)];}

  static Traversability from_truth(const world::GroundTruthMap & truth);
  /// `unknown_passable` selects optimistic (navigation) or pessimistic
  /// (exploration) treatment of unknown cells.
  static Traversability from_belief(const world::BeliefMap & belief, bool unknown_passable);
};

/// Grid path; the cost is straight moves + diagonal moves * sqrt(2), in cells,
/// scaled by the cell size. Keeping the two move counts separately makes
/// cost comparisons between equal-length paths exact.
struct GridPath
{
  std::vector<world::CellIndex> cells;
  int straight_moves{0};
  int diagonal_moves{0};
  double cell_size{1.0};

  double cost() const;
};

/// Cost of one 8-connected move in cell units.
double step_cost(world::CellIndex a, world::CellIndex b);

/// 8-connected move from `from` to `to` is legal: both passable and, for a
/// diagonal move, both orthogonally adjacent cells passable (no corner cutting).
bool move_allowed(const Traversability & map, world::CellIndex from, world::CellIndex to);

/// Optimal 8-connected path under the octile heuristic. Ties on f are broken by
/// smaller h, then smaller cell index. Throws NoPathError.
GridPath astar(world::CellIndex start, world::CellIndex goal, const Traversability & map);

/// Dijkstra distance field (cells) from `source` over legal moves; unreachable = +inf.
std::vector<double> distance_field(world::CellIndex source, const Traversability & map);

}  // namespace hiernav::baselines

#endif  // HIERNAV_BASELINES_ASTAR_HPP_
