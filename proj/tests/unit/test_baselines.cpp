#include <gtest/gtest.h>

#include <random>

#include "hiernav/baselines/astar.hpp"
#include "hiernav/baselines/frontier_explorer.hpp"
#include "hiernav/baselines/replan.hpp"
#include "hiernav/world/sensing.hpp"
#include "oracles.hpp"

using namespace hiernav;
using baselines::Traversability;
using world::BeliefMap;
using world::Cell;
using world::CellIndex;
using world::GroundTruthMap;

namespace
{

Traversability open_grid(int w, int h)
{
  return {{w, h, 1.0}, std::vector<bool>(static_cast<std::size_t>(w * h), true)};
}

bool adjacent8(CellIndex a, CellIndex b)
{
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) == 1;
}

}  // namespace

TEST(Astar, StraightCorridor)
{
  Traversability map = open_grid(6, 1);
  map.shape.cell_size = 0.5;
  const baselines::GridPath p = baselines::astar({0, 0}, {5, 0}, map);
  EXPECT_DOUBLE_EQ(p.cost(), 2.5);
  EXPECT_EQ(p.cells.size(), 6u);
}

TEST(Astar, StartEqualsGoal)
{
  const baselines::GridPath p = baselines::astar({2, 2}, {2, 2}, open_grid(4, 4));
  EXPECT_EQ(p.cells.size(), 1u);
  EXPECT_DOUBLE_EQ(p.cost(), 0.0);
}

TEST(Astar, WalledGoalHasNoPath)
{
  const GroundTruthMap m = world::load_map("S.#.\n..#.\n..#.\n");
  EXPECT_THROW(baselines::astar({0, 0}, {3, 0}, Traversability::from_truth(m)), baselines::NoPathError);
}

TEST(Astar, NoCornerCutting)
{
  // The only diagonal between (0,0) and (1,1) squeezes past two walls.
  const GroundTruthMap m = world::load_map("S#\n#.\n");
  EXPECT_THROW(baselines::astar({0, 0}, {1, 1}, Traversability::from_truth(m)), baselines::NoPathError);
}

TEST(Astar, MatchesDijkstraOnRandomGrids)
{
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 29);
  int solved = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const GroundTruthMap m = oracle::random_map(rng, 30, 30, 0.3);
    const Traversability map = Traversability::from_truth(m);
    CellIndex s{coord(rng), coord(rng)};
    CellIndex g{coord(rng), coord(rng)};
    while (!map.passable(s)) {
      s = {coord(rng), coord(rng)};
    }
    while (!map.passable(g)) {
      g = {coord(rng), coord(rng)};
    }
    const oracle::MoveCost want = oracle::dijkstra_cost(map.free, 30, 30, s, g);
    if (want.straight < 0) {
      EXPECT_THROW(baselines::astar(s, g, map), baselines::NoPathError);
      continue;
    }
    ++solved;
    const baselines::GridPath p = baselines::astar(s, g, map);
    EXPECT_EQ(p.straight_moves, want.straight);
    EXPECT_EQ(p.diagonal_moves, want.diagonal);
    ASSERT_FALSE(p.cells.empty());
    EXPECT_EQ(p.cells.front(), s);
    EXPECT_EQ(p.cells.back(), g);
    double length = 0.0;
    for (std::size_t i = 1; i < p.cells.size(); ++i) {
      EXPECT_TRUE(adjacent8(p.cells[i - 1], p.cells[i]));
      EXPECT_TRUE(baselines::move_allowed(map, p.cells[i - 1], p.cells[i]));
      length += baselines::step_cost(p.cells[i - 1], p.cells[i]);
    }
    EXPECT_NEAR(length, p.cost(), 1e-9);
  }
  EXPECT_GT(solved, 5);
}

TEST(Astar, DeterministicTieBreak)
{
  const Traversability map = open_grid(7, 7);
  const baselines::GridPath a = baselines::astar({0, 0}, {6, 3}, map);
  const baselines::GridPath b = baselines::astar({0, 0}, {6, 3}, map);
  EXPECT_EQ(a.cells, b.cells);
  EXPECT_EQ(a.straight_moves, 3);
  EXPECT_EQ(a.diagonal_moves, 3);
}

TEST(DistanceField, AgreesWithDijkstra)
{
  std::mt19937_64 rng(8);
  const GroundTruthMap m = oracle::random_map(rng, 12, 12, 0.25);
  const Traversability map = Traversability::from_truth(m);
  const std::vector<double> field = baselines::distance_field({0, 0}, map);
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 12; ++x) {
      const oracle::MoveCost c = oracle::dijkstra_cost(map.free, 12, 12, {0, 0}, {x, y});
      if (c.straight < 0) {
        EXPECT_TRUE(std::isinf(field[m.shape().index({x, y})]));
      } else {
        EXPECT_NEAR(field[m.shape().index({x, y})], c.value(), 1e-9);
      }
    }
  }
}

TEST(FrontierExplorer, NoFrontierMeansDone)
{
  const GroundTruthMap m = world::load_map("S..\n...\n");
  EXPECT_FALSE(baselines::nearest_frontier_step(BeliefMap::fully_revealed(m), {0, 0}).has_value());
}

TEST(FrontierExplorer, SingleFrontierFollowsAstar)
{
  const GroundTruthMap m = world::load_map("S....\n.....\n");
  BeliefMap belief(m.shape());
  for (int x = 0; x < 4; ++x) {
    belief.reveal({x, 0}, Cell::Free);
    belief.reveal({x, 1}, Cell::Free);
  }
  belief.reveal({4, 1}, Cell::Free);
  // Only (3,0), (4,1) and (3,1) border the unknown (4,0); (3,0) is the lowest index among the nearest.
  const auto step = baselines::nearest_frontier_step(belief, {0, 0});
  ASSERT_TRUE(step.has_value());
  const baselines::GridPath p = baselines::astar({0, 0}, {3, 0}, Traversability::from_belief(belief, false));
  EXPECT_EQ(*step, p.cells[1]);
}

TEST(FrontierExplorer, EquidistantFrontiersPickLowerIndex)
{
  // Known strip x = 1..5 of a 7 x 1 corridor; pose in the middle.
  BeliefMap belief({7, 1, 1.0});
  for (int x = 1; x <= 5; ++x) {
    belief.reveal({x, 0}, Cell::Free);
  }
  const auto step = baselines::nearest_frontier_step(belief, {3, 0});
  ASSERT_TRUE(step.has_value());
  EXPECT_EQ(*step, (CellIndex{2, 0}));
}

TEST(FrontierExplorer, CoversConnectedMapsWithinBound)
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const GroundTruthMap m = oracle::random_map(rng, 12, 10, 0.2);
    BeliefMap belief(m.shape());
    CellIndex pose = m.start();
    world::sense_and_update(m.shape().center(pose), m, belief, 3.0);
    const int bound = static_cast<int>(m.shape().cell_count()) * 8;
    int steps = 0;
    while (auto next = baselines::nearest_frontier_step(belief, pose)) {
      ASSERT_TRUE(adjacent8(pose, *next));
      ASSERT_EQ(m.at(*next), Cell::Free);
      pose = *next;
      world::sense_and_update(m.shape().center(pose), m, belief, 3.0);
      ASSERT_LT(++steps, bound);
    }
    // Everything reachable from the start is known once no frontier is left.
    const std::vector<double> reach = baselines::distance_field(m.start(), Traversability::from_truth(m));
    for (std::size_t i = 0; i < reach.size(); ++i) {
      if (std::isfinite(reach[i])) {
        EXPECT_EQ(belief.at(m.shape().cell(static_cast<int>(i))), world::Belief::Free);
      }
    }
  }
}

namespace
{

/// Replanning with a fresh optimistic Dijkstra field every step: move to the
/// neighbour minimising step + remaining cost, lowest index on ties.
double simulate_replanning(const GroundTruthMap & m, CellIndex start, CellIndex target, double range)
{
  const int w = m.width();
  const int h = m.height();
  BeliefMap belief(m.shape());
  CellIndex pose = start;
  world::sense_and_update(m.shape().center(pose), m, belief, range);
  double cost = 0.0;
  for (int guard = 0; pose != target; ++guard) {
    if (guard > w * h * 8) {
      ADD_FAILURE() << "oracle did not converge";
      return -1.0;
    }
    std::vector<bool> free(static_cast<std::size_t>(w * h));
    for (int i = 0; i < w * h; ++i) {
      free[i] = belief.at(m.shape().cell(i)) != world::Belief::Occupied;
    }
    double best = std::numeric_limits<double>::infinity();
    CellIndex next = pose;
    for (int y = pose.y - 1; y <= pose.y + 1; ++y) {
      for (int x = pose.x - 1; x <= pose.x + 1; ++x) {
        const CellIndex c{x, y};
        if (c == pose || x < 0 || y < 0 || x >= w || y >= h || !free[y * w + x]) {
          continue;
        }
        if (x != pose.x && y != pose.y && (!free[pose.y * w + x] || !free[y * w + pose.x])) {
          continue;
        }
        const oracle::MoveCost rest = oracle::dijkstra_cost(free, w, h, c, target);
        if (rest.straight < 0) {
          continue;
        }
        const double total = (x != pose.x && y != pose.y ? std::sqrt(2.0) : 1.0) + rest.value();
        if (total < best - 1e-9) {
          best = total;
          next = c;
        }
      }
    }
    cost += baselines::step_cost(pose, next);
    pose = next;
    world::sense_and_update(m.shape().center(pose), m, belief, range);
  }
  return cost;
}

}  // namespace

TEST(Replan, FullyRevealedBeliefIsOptimal)
{
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const GroundTruthMap m = oracle::random_map(rng, 15, 15, 0.25);
    const Traversability map = Traversability::from_truth(m);
    const CellIndex goal{14, 14};
    if (!map.passable(goal) || oracle::dijkstra_cost(map.free, 15, 15, {0, 0}, goal).straight < 0) {
      continue;
    }
    const BeliefMap full = BeliefMap::fully_revealed(m);
    const baselines::NavigationResult r = baselines::replan_navigate(m, {0, 0}, goal, 5.0, &full);
    EXPECT_DOUBLE_EQ(r.cost(), baselines::astar({0, 0}, goal, map).cost());
    EXPECT_EQ(r.replans, 0);
  }
}

TEST(Replan, EmptyMapGoesStraight)
{
  const GroundTruthMap m({10, 10, 1.0}, std::vector<Cell>(100, Cell::Free), {0, 0});
  const baselines::NavigationResult r = baselines::replan_navigate(m, {0, 0}, {9, 4}, 3.0);
  EXPECT_EQ(r.straight_moves, 5);
  EXPECT_EQ(r.diagonal_moves, 4);
  EXPECT_EQ(r.replans, 0);
}

TEST(Replan, UnreachableTargetThrows)
{
  const GroundTruthMap m = world::load_map("S.#..\n..#..\n..#..\n");
  EXPECT_THROW(baselines::replan_navigate(m, {0, 0}, {4, 1}, 3.0), baselines::NoPathError);
}

TEST(Replan, UTrapCostsMoreThanOptimalAndMatchesSimulation)
{
  const GroundTruthMap m = world::load_map(
    "...............\n"
    "...............\n"
    "...............\n"
    "...............\n"
    "...............\n"
    "...#########...\n"
    "...#.......#...\n"
    "...#.......#...\n"
    "...#.......#...\n"
    "...#.......#...\n"
    "...............\n"
    "...............\n"
    ".......S.......\n"
    "...............\n");
  const CellIndex start{7, 12};
  const CellIndex target{7, 1};
  const double optimal = baselines::astar(start, target, Traversability::from_truth(m)).cost();
  const baselines::NavigationResult r = baselines::replan_navigate(m, start, target, 2.0);
  EXPECT_GT(r.cost(), optimal + 1.0);
  EXPECT_GT(r.replans, 0);
  EXPECT_NEAR(r.cost(), simulate_replanning(m, start, target, 2.0), 1e-9);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
    EXPECT_EQ(m.at(r.trajectory[i]), Cell::Free);
  }
}

TEST(Replan, ReachesEveryReachableTarget)
{
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(0, 19);
  int runs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const GroundTruthMap m = oracle::random_map(rng, 20, 20, 0.25);
    const Traversability map = Traversability::from_truth(m);
    const CellIndex goal{coord(rng), coord(rng)};
    if (!map.passable(goal) || oracle::dijkstra_cost(map.free, 20, 20, {0, 0}, goal).straight < 0) {
      continue;
    }
    ++runs;
    const baselines::NavigationResult r = baselines::replan_navigate(m, {0, 0}, goal, 4.0);
    EXPECT_EQ(r.trajectory.back(), goal);
    EXPECT_GE(r.cost(), baselines::astar({0, 0}, goal, map).cost() - 1e-9);
  }
  EXPECT_GT(runs, 5);
}
