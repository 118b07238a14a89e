#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hiernav/world/grid.hpp"
#include "hiernav/world/line_of_sight.hpp"
#include "hiernav/world/sensing.hpp"
#include "oracles.hpp"

using namespace hiernav::world;

namespace
{

GroundTruthMap open_map(int w, int h, CellIndex start = {0, 0})
{
  return GroundTruthMap({w, h, 1.0}, std::vector<Cell>(static_cast<std::size_t>(w * h), Cell::Free), start);
}

}  // namespace

TEST(MapFormat, CentralWallCountsOneOccupiedCell)
{
  const GroundTruthMap m = load_map("S..\n.#.\n...\n");
  EXPECT_EQ(m.width(), 3);
  EXPECT_EQ(m.height(), 3);
  EXPECT_EQ(m.occupied_count(), 1);
  EXPECT_TRUE(m.occupied({1, 1}));
  EXPECT_EQ(m.start(), (CellIndex{0, 0}));
  EXPECT_FALSE(m.target().has_value());
}

TEST(MapFormat, RaggedRowReportsItsRow)
{
  try {
    load_map("S..\n...\n....\n");
    FAIL() << "expected a format error";
  } catch (const MapFormatError & e) {
    EXPECT_EQ(e.row(), 2);
  }
}

TEST(MapFormat, UnreachableTargetIsRejected)
{
  EXPECT_THROW(load_map("S#..\n##..\n...T\n"), MapFormatError);
}

TEST(MapFormat, UnknownCharacterReportsPosition)
{
  try {
    load_map("S.\n.x\n");
    FAIL() << "expected a format error";
  } catch (const MapFormatError & e) {
    EXPECT_EQ(e.row(), 1);
    EXPECT_EQ(e.column(), 1);
  }
}

TEST(MapFormat, MissingOrDuplicateStartIsRejected)
{
  EXPECT_THROW(load_map("...\n...\n"), MapFormatError);
  EXPECT_THROW(load_map("S.S\n...\n"), MapFormatError);
  EXPECT_THROW(load_map("S.T\n..T\n"), MapFormatError);
}

TEST(MapFormat, CommentLineCarriesCellSize)
{
  const GroundTruthMap m = load_map("; cell_size=0.5\nS.\n.T\n");
  EXPECT_DOUBLE_EQ(m.cell_size(), 0.5);
  EXPECT_EQ(m.height(), 2);
  ASSERT_TRUE(m.target().has_value());
  EXPECT_EQ(*m.target(), (CellIndex{1, 1}));
}

TEST(MapFormat, TextRoundTrips)
{
  const std::string text = "S..#\n.#..\n...T\n";
  EXPECT_EQ(to_text(load_map(text)), text);
  const std::string scaled = "; cell_size=0.25\nS.\n.T\n";
  const GroundTruthMap m = load_map(scaled);
  const GroundTruthMap again = load_map(to_text(m));
  EXPECT_EQ(again.cells(), m.cells());
  EXPECT_DOUBLE_EQ(again.cell_size(), 0.25);
}

TEST(MapFormat, ReachabilityIsFourConnected)
{
  // The lower-right cell touches the start region only diagonally.
  const GroundTruthMap m = load_map("S.#\n.#.\n##.\n");
  EXPECT_EQ(m.reachable_count(), 3);
  EXPECT_FALSE(m.reachable()[m.shape().index({2, 2})]);
}

TEST(LineOfSight, DegenerateSegmentIsClear)
{
  const GroundTruthMap m = open_map(4, 4);
  EXPECT_TRUE(line_of_sight({1.5, 1.5}, {1.5, 1.5}, m));
}

TEST(LineOfSight, EmptyMapIsAlwaysClear)
{
  const GroundTruthMap m = open_map(6, 5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 6.0);
  std::uniform_real_distribution<double> uy(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(line_of_sight({ux(rng), uy(rng)}, {ux(rng), uy(rng)}, m));
  }
}

TEST(LineOfSight, WallColumnBlocks)
{
  const GroundTruthMap m = load_map("S.#..\n..#..\n..#..\n");
  EXPECT_FALSE(line_of_sight({0.5, 0.5}, {4.5, 2.5}, m));
  EXPECT_FALSE(line_of_sight({1.5, 1.5}, {3.5, 1.5}, m));
  EXPECT_TRUE(line_of_sight({0.5, 0.5}, {1.5, 2.5}, m));
}

TEST(LineOfSight, DiagonalGapBetweenCornersIsClosed)
{
  // Two occupied cells meeting at a corner: the diagonal through it is blocked.
  const GroundTruthMap m = load_map("S#\n#.\n");
  EXPECT_FALSE(line_of_sight({0.5, 0.5}, {1.5, 1.5}, m));
}

TEST(LineOfSight, SupercoverMatchesBoxClipping)
{
  std::mt19937_64 rng(11);
  const GridShape shape{9, 7, 0.5};
  std::uniform_real_distribution<double> ux(0.0, shape.width_m());
  std::uniform_real_distribution<double> uy(0.0, shape.height_m());
  std::uniform_int_distribution<int> cx(0, shape.width - 1);
  std::uniform_int_distribution<int> cy(0, shape.height - 1);
  for (int i = 0; i < 400; ++i) {
    Point a;
    Point b;
    if (i % 2 == 0) {
      a = {ux(rng), uy(rng)};
      b = {ux(rng), uy(rng)};
    } else {
      a = shape.center({cx(rng), cy(rng)});
      b = shape.center({cx(rng), cy(rng)});
    }
    std::vector<CellIndex> got = supercover(shape, a, b);
    std::vector<CellIndex> want = oracle::touched_cells(shape, a, b);
    auto key = [&](CellIndex c) {return shape.index(c);};
    std::sort(got.begin(), got.end(), [&](CellIndex l, CellIndex r) {return key(l) < key(r);});
    ASSERT_EQ(got.size(), want.size()) << "segment " << a.x << "," << a.y << " -> " << b.x << "," << b.y;
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_EQ(got[k], want[k]);
    }
  }
}

TEST(LineOfSight, SymmetricInEndpoints)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const GroundTruthMap m = oracle::random_map(rng, 12, 10, 0.25);
    BeliefMap belief(m.shape());
    sense_and_update(m.shape().center(m.start()), m, belief, 6.0);
    std::uniform_real_distribution<double> ux(0.0, 12.0);
    std::uniform_real_distribution<double> uy(0.0, 10.0);
    for (int i = 0; i < 100; ++i) {
      const Point a{ux(rng), uy(rng)};
      const Point b{ux(rng), uy(rng)};
      EXPECT_EQ(line_of_sight(a, b, m), line_of_sight(b, a, m));
      EXPECT_EQ(line_of_sight(a, b, belief), line_of_sight(b, a, belief));
    }
  }
}

TEST(LineOfSight, BeliefModeNeedsKnownFreeCells)
{
  const GroundTruthMap m = open_map(5, 1);
  BeliefMap belief(m.shape());
  for (int x = 0; x < 4; ++x) {
    belief.reveal({x, 0}, Cell::Free);
  }
  EXPECT_TRUE(line_of_sight({0.5, 0.5}, {3.5, 0.5}, belief));
  EXPECT_FALSE(line_of_sight({0.5, 0.5}, {4.5, 0.5}, belief));
}

TEST(Sensing, LargeRangeRevealsEmptyMap)
{
  const GroundTruthMap m = open_map(5, 5, {2, 2});
  BeliefMap belief(m.shape());
  const auto revealed = sense_and_update(m.shape().center({2, 2}), m, belief, 10.0);
  EXPECT_EQ(revealed.size(), 25u);
  EXPECT_EQ(belief.known_count(), 25);
}

TEST(Sensing, ZeroRangeRevealsOwnCell)
{
  const GroundTruthMap m = open_map(5, 5, {2, 2});
  BeliefMap belief(m.shape());
  const auto revealed = sense_and_update(m.shape().center({2, 2}), m, belief, 0.0);
  ASSERT_EQ(revealed.size(), 1u);
  EXPECT_EQ(revealed[0], (CellIndex{2, 2}));
}

TEST(Sensing, OccludedRoomStaysUnknownAndMatchesOracle)
{
  const GroundTruthMap m = load_map(
    "S.......\n"
    "........\n"
    "....####\n"
    "....#...\n"
    "....#...\n"
    "........\n");
  BeliefMap belief(m.shape());
  const Point pose = m.shape().center(m.start());
  const auto revealed = sense_and_update(pose, m, belief, 20.0);
  EXPECT_EQ(belief.at(CellIndex{6, 3}), Belief::Unknown);
  const std::vector<bool> want = oracle::visible_cells(m, pose, 20.0);
  std::vector<bool> got(want.size(), false);
  for (CellIndex c : revealed) {
    got[m.shape().index(c)] = true;
  }
  EXPECT_EQ(got, want);
}

TEST(Sensing, RevealedSetMatchesOracleOnRandomMaps)
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const GroundTruthMap m = oracle::random_map(rng, 14, 11, 0.2, trial % 2 == 0 ? 1.0 : 0.5);
    BeliefMap belief(m.shape());
    std::uniform_int_distribution<int> cx(0, m.width() - 1);
    std::uniform_int_distribution<int> cy(0, m.height() - 1);
    const Point pose = m.shape().center({cx(rng), cy(rng)});
    const double range = 2.0 + trial % 5;
    const auto revealed = sense_and_update(pose, m, belief, range);
    const std::vector<bool> want = oracle::visible_cells(m, pose, range);
    std::vector<bool> got(want.size(), false);
    for (CellIndex c : revealed) {
      got[m.shape().index(c)] = true;
    }
    EXPECT_EQ(got, want) << "trial " << trial;
    EXPECT_TRUE(std::is_sorted(revealed.begin(), revealed.end(),
      [&](CellIndex a, CellIndex b) {return m.shape().index(a) < m.shape().index(b);}));
  }
}

TEST(Sensing, IdempotentMonotoneAndSound)
{
  std::mt19937_64 rng(8);
  const GroundTruthMap m = oracle::random_map(rng, 16, 12, 0.25);
  BeliefMap belief(m.shape());
  std::uniform_int_distribution<int> cx(0, 15);
  std::uniform_int_distribution<int> cy(0, 11);
  int known = 0;
  for (int step = 0; step < 25; ++step) {
    const Point pose = m.shape().center({cx(rng), cy(rng)});
    sense_and_update(pose, m, belief, 5.0);
    EXPECT_GE(belief.known_count(), known);
    known = belief.known_count();
    EXPECT_TRUE(sense_and_update(pose, m, belief, 5.0).empty());
  }
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      const Belief b = belief.at(CellIndex{x, y});
      if (b != Belief::Unknown) {
        EXPECT_EQ(b == Belief::Occupied, m.occupied({x, y}));
      }
    }
  }
}

TEST(Coverage, CountsReachableKnownFreeCells)
{
  const GroundTruthMap m = open_map(5, 4);
  BeliefMap belief(m.shape());
  EXPECT_DOUBLE_EQ(coverage_fraction(belief, m), 0.0);
  EXPECT_DOUBLE_EQ(coverage_fraction(BeliefMap::fully_revealed(m), m), 1.0);
  for (int i = 0; i < 10; ++i) {
    belief.reveal(m.shape().cell(i), Cell::Free);
  }
  EXPECT_DOUBLE_EQ(coverage_fraction(belief, m), 0.5);
}

TEST(Coverage, IgnoresUnreachablePockets)
{
  const GroundTruthMap m = load_map("S.#.\n..#.\n###.\n");
  EXPECT_EQ(m.reachable_count(), 4);
  EXPECT_DOUBLE_EQ(coverage_fraction(BeliefMap::fully_revealed(m), m), 1.0);
}

TEST(Belief, RevealIsOneWay)
{
  BeliefMap belief({2, 2, 1.0});
  EXPECT_TRUE(belief.reveal({0, 0}, Cell::Free));
  EXPECT_FALSE(belief.reveal({0, 0}, Cell::Occupied));
  EXPECT_EQ(belief.at(CellIndex{0, 0}), Belief::Free);
  EXPECT_EQ(belief.known_count(), 1);
}
