#include "hiernav/world/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hiernav/world/line_of_sight.hpp"

namespace hiernav::world
{

bool visible(const Point & from, CellIndex cell, const GroundTruthMap & truth, double range)
{
  const Point center = truth.shape().center(cell);
  if (distance(from, center) > range + 1e-9) {
    return false;
  }
  return for_each_supercover_cell(
    truth.shape(), from, center, [&](CellIndex c) {
      return c == cell || !truth.occupied(c);
    });
}

std::vector<CellIndex> sense_and_update(
  const Point & pose, const GroundTruthMap & truth, BeliefMap & belief, double range)
{
  if (!(belief.shape() == truth.shape())) {
    throw std::invalid_argument("belief and truth shapes differ");
  }
  const GridShape & shape = truth.shape();
  const double reach = std::max(range, 0.0) / shape.cell_size;
  const CellIndex origin = shape.cell_at(pose);
  const int span = static_cast<int>(std::ceil(reach)) + 1;
  const int x0 = std::max(0, origin.x - span);
  const int x1 = std::min(shape.width - 1, origin.x + span);
  const int y0 = std::max(0, origin.y - span);
  const int y1 = std::min(shape.height - 1, origin.y + span);

  std::vector<CellIndex> revealed;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const CellIndex c{x, y};
      if (belief.known(c) || !visible(pose, c, truth, range)) {
        continue;
      }
      belief.reveal(c, truth.at(c));
      revealed.push_back(c);
    }
  }
  return revealed;
}

double coverage_fraction(const BeliefMap & belief, const GroundTruthMap & truth)
{
  if (truth.reachable_count() == 0) {
    return 0.0;
  }
  int known_free = 0;
  const auto & reachable = truth.reachable();
  for (int i = 0; i < truth.shape().cell_count(); ++i) {
    if (reachable[i] && belief.at(i) == Belief::Free) {
      ++known_free;
    }
  }
  return static_cast<double>(known_free) / truth.reachable_count();
}

}  // namespace hiernav::world
