#include "hiernav/baselines/astar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

namespace hiernav::baselines
{

namespace
{

constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
const double kSqrt2 = std::sqrt(2.0);

double octile(world::CellIndex a, world::CellIndex b)
{
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return std::max(dx, dy) - std::min(dx, dy) + kSqrt2 * std::min(dx, dy);
}

struct Moves
{
  int straight{0};
  int diagonal{0};
  double value() const {return straight + kSqrt2 * diagonal;}
};

}  // namespace

Traversability Traversability::from_truth(const world::GroundTruthMap & truth)
{
  Traversability t{truth.shape(), std::vector<bool>(truth.cells().size())};
  for (std::size_t i = 0; i < truth.cells().size(); ++i) {
    t.free[i] = truth.cells()[i] == world::Cell::Free;
  }
  return t;
}

Traversability Traversability::from_belief(const world::BeliefMap & belief, bool unknown_passable)
{
  Traversability t{belief.shape(), std::vector<bool>(belief.shape().cell_count())};
  for (int i = 0; i < belief.shape().cell_count(); ++i) {
    const world::Belief b = belief.at(i);
    t.free[i] = b == world::Belief::Free || (unknown_passable && b == world::Belief::Unknown);
  }
  return t;
}

double GridPath::cost() const
{
  return (straight_moves + kSqrt2 * diagonal_moves) * cell_size;
}

double step_cost(world::CellIndex a, world::CellIndex b)
{
  return (a.x != b.x && a.y != b.y) ? kSqrt2 : 1.0;
}

bool move_allowed(const Traversability & map, world::CellIndex from, world::CellIndex to)
{
  if (std::abs(from.x - to.x) > 1 || std::abs(from.y - to.y) > 1) {
    return false;
  }
  if (!map.passable(from) || !map.passable(to)) {
    return false;
  }
  if (from.x != to.x && from.y != to.y) {
    return map.passable({to.x, from.y}) && map.passable({from.x, to.y});
  }
  return true;
}

GridPath astar(world::CellIndex start, world::CellIndex goal, const Traversability & map)
{
  if (!map.passable(start) || !map.passable(goal)) {
    throw NoPathError("start or goal is not traversable");
  }
  const world::GridShape & shape = map.shape;
  const int n = shape.cell_count();
  std::vector<Moves> g(n);
  std::vector<bool> has_g(n, false);
  std::vector<bool> closed(n, false);
  std::vector<int> parent(n, -1);

  // (f, h, cell index), popped smallest first.
  using Entry = std::tuple<double, double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const int s = shape.index(start);
  const int t = shape.index(goal);
  has_g[s] = true;
  open.emplace(octile(start, goal), octile(start, goal), s);

  while (!open.empty()) {
    const auto [f, h, u] = open.top();
    open.pop();
    if (closed[u]) {
      continue;
    }
    closed[u] = true;
    if (u == t) {
      break;
    }
    const world::CellIndex cu = shape.cell(u);
    for (int k = 0; k < 8; ++k) {
      const world::CellIndex cv{cu.x + kDx[k], cu.y + kDy[k]};
      if (!move_allowed(map, cu, cv)) {
        continue;
      }
      const int v = shape.index(cv);
      if (closed[v]) {
        continue;
      }
      Moves candidate = g[u];
      (k < 4 ? candidate.straight : candidate.diagonal) += 1;
      if (!has_g[v] || candidate.value() < g[v].value() - 1e-12) {
        g[v] = candidate;
        has_g[v] = true;
        parent[v] = u;
        const double hv = octile(cv, goal);
        open.emplace(candidate.value() + hv, hv, v);
      }
    }
  }
  if (!closed[t]) {
    throw NoPathError("goal is unreachable");
  }
  GridPath path;
  path.cell_size = shape.cell_size;
  path.straight_moves = g[t].straight;
  path.diagonal_moves = g[t].diagonal;
  for (int c = t; c != -1; c = parent[c]) {
    path.cells.push_back(shape.cell(c));
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

std::vector<double> distance_field(world::CellIndex source, const Traversability & map)
{
  const world::GridShape & shape = map.shape;
  std::vector<double> dist(shape.cell_count(), std::numeric_limits<double>::infinity());
  if (!map.passable(source)) {
    return dist;
  }
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[shape.index(source)] = 0.0;
  open.emplace(0.0, shape.index(source));
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[u]) {
      continue;
    }
    const world::CellIndex cu = shape.cell(u);
    for (int k = 0; k < 8; ++k) {
      const world::CellIndex cv{cu.x + kDx[k], cu.y + kDy[k]};
      if (!move_allowed(map, cu, cv)) {
        continue;
      }
      const int v = shape.index(cv);
      const double nd = d + (k < 4 ? 1.0 : kSqrt2);
      if (nd < dist[v]) {
        dist[v] = nd;
        open.emplace(nd, v);
      }
    }
  }
  return dist;
}

}  // namespace hiernav::baselines
