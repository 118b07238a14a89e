#ifndef HIERNAV_WORLD_LINE_OF_SIGHT_HPP_
#define HIERNAV_WORLD_LINE_OF_SIGHT_HPP_

#include <vector>

#include "hiernav/world/grid.hpp"

namespace hiernav::world
{

/// Visits every in-bounds cell the closed segment [a, b] touches, corners
/// included (supercover). The traversal is computed on the endpoint pair in
/// canonical order, so the visited set is the same for (a, b) and (b, a).
/// `visit(CellIndex)` returns false to stop early; the function returns
/// false iff the visit was stopped.
template<class Visitor>
bool for_each_supercover_cell(const GridShape & shape, Point a, Point b, Visitor && visit);

/// All cells touched by the segment, in traversal order.
std::vector<CellIndex> supercover(const GridShape & shape, Point a, Point b);

/// Ground-truth mode: no touched cell is Occupied.
bool line_of_sight(Point a, Point b, const GroundTruthMap & truth);

/// Conservative belief mode: every touched cell is known free.
bool line_of_sight(Point a, Point b, const BeliefMap & belief);

}  // namespace hiernav::world

#include "hiernav/world/line_of_sight_impl.hpp"

#endif  // HIERNAV_WORLD_LINE_OF_SIGHT_HPP_
