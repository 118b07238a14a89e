#include "hiernav/world/line_of_sight.hpp"

namespace hiernav::world
{

std::vector<CellIndex> supercover(const GridShape & shape, Point a, Point b)
{
  std::vector<CellIndex> cells;
  for_each_supercover_cell(
    shape, a, b, [&](CellIndex c) {
      cells.push_back(c);
      return true;
    });
  return cells;
}

bool line_of_sight(Point a, Point b, const GroundTruthMap & truth)
{
  return for_each_supercover_cell(
    truth.shape(), a, b, [&](CellIndex c) {return !truth.occupied(c);});
}

bool line_of_sight(Point a, Point b, const BeliefMap & belief)
{
  return for_each_supercover_cell(
    belief.shape(), a, b, [&](CellIndex c) {return belief.at(c) == Belief::Free;});
}

}  // namespace hiernav::world
