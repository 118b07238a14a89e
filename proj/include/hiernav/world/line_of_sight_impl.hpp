#ifndef HIERNAV_WORLD_LINE_OF_SIGHT_IMPL_HPP_
#define HIERNAV_WORLD_LINE_OF_SIGHT_IMPL_HPP_

#include <algorithm>
#include <cmath>
#include <utility>

namespace hiernav::world
{

namespace detail
{

inline constexpr double kTouchEps = 1e-9;

// Indices k whose closed unit interval [k, k+1] meets [lo, hi].
inline std::pair<int, int> touched_range(double lo, double hi, int limit)
{
  int first = static_cast<int>(std::ceil(lo - kTouchEps)) - 1;
  int last = static_cast<int>(std::floor(hi + kTouchEps));
  return {std::max(first, 0), std::min(last, limit - 1)};
}

}  // namespace detail

template<class Visitor>
bool for_each_supercover_cell(const GridShape & shape, Point a, Point b, Visitor && visit)
{
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) {
    std::swap(a, b);
  }
  const double ax = a.x / shape.cell_size;
  const double ay = a.y / shape.cell_size;
  const double bx = b.x / shape.cell_size;
  const double by = b.y / shape.cell_size;

  const auto [col_first, col_last] = detail::touched_range(ax, bx, shape.width);
  const double dx = bx - ax;
  for (int cx = col_first; cx <= col_last; ++cx) {
    double ylo;
    double yhi;
    if (dx <= detail::kTouchEps) {
      ylo = std::min(ay, by);
      yhi = std::max(ay, by);
    } else {
      const double x0 = std::clamp(static_cast<double>(cx), ax, bx);
      const double x1 = std::clamp(static_cast<double>(cx + 1), ax, bx);
      const double slope = (by - ay) / dx;
      const double y0 = ay + (x0 - ax) * slope;
      const double y1 = ay + (x1 - ax) * slope;
      ylo = std::min(y0, y1);
      yhi = std::max(y0, y1);
    }
    const auto [row_first, row_last] = detail::touched_range(ylo, yhi, shape.height);
    if (by >= ay) {
      for (int cy = row_first; cy <= row_last; ++cy) {
        if (!visit(CellIndex{cx, cy})) {
          return false;
        }
      }
    } else {
      for (int cy = row_last; cy >= row_first; --cy) {
        if (!visit(CellIndex{cx, cy})) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace hiernav::world

#endif  // HIERNAV_WORLD_LINE_OF_SIGHT_IMPL_HPP_
