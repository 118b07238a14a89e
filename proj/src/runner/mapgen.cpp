#include "hiernav/runner/mapgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hiernav/runner/config.hpp"

namespace hiernav::runner
{

using world::Cell;
using world::CellIndex;

std::string to_string(MapStyle style)
{
  switch (style) {
    case MapStyle::Rooms: return "rooms";
    case MapStyle::Cave: return "cave";
    case MapStyle::Corridor: return "corridor";
  }
  return "unknown";
}

MapStyle parse_style(const std::string & name)
{
  for (MapStyle s : {MapStyle::Rooms, MapStyle::Cave, MapStyle::Corridor}) {
    if (to_string(s) == name) {
      return s;
    }
  }
  throw ConfigError("unknown map style '" + name + "'");
}

std::string map_file_name(int index)
{
  char name[32];
  std::snprintf(name, sizeof(name), "map_%04d.txt", index);
  return name;
}

namespace
{

using Rng = std::mt19937_64;

class Canvas
{
public:
  Canvas(int w, int h)
  : w_(w), h_(h), cells_(static_cast<std::size_t>(w * h), Cell::Free) {}

  int width() const {return w_;}
  int height() const {return h_;}
  Cell & at(int x, int y) {return cells_[y * w_ + x];}
  Cell at(int x, int y) const {return cells_[y * w_ + x];}
  bool free(int x, int y) const {return at(x, y) == Cell::Free;}
  std::vector<Cell> & cells() {return cells_;}

  void fill(Cell c) {std::fill(cells_.begin(), cells_.end(), c);}
  void rect(int x0, int y0, int x1, int y1, Cell c)
  {
    for (int y = std::max(0, y0); y <= std::min(h_ - 1, y1); ++y) {
      for (int x = std::max(0, x0); x <= std::min(w_ - 1, x1); ++x) {
        at(x, y) = c;
      }
    }
  }
  void border()
  {
    rect(0, 0, w_ - 1, 0, Cell::Occupied);
    rect(0, h_ - 1, w_ - 1, h_ - 1, Cell::Occupied);
    rect(0, 0, 0, h_ - 1, Cell::Occupied);
    rect(w_ - 1, 0, w_ - 1, h_ - 1, Cell::Occupied);
  }

private:
  int w_;
  int h_;
  std::vector<Cell> cells_;
};

int uniform(Rng & rng, int lo, int hi)
{
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng & rng, double p)
{
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

constexpr int kMinRoom = 4;

/// Recursive division of the free rectangle [x0, x1] x [y0, y1] by one-cell
/// walls, each with a doorway two or three cells wide.
void divide(Canvas & c, Rng & rng, int x0, int y0, int x1, int y1)
{
  const int w = x1 - x0 + 1;
  const int h = y1 - y0 + 1;
  const bool can_split_x = w >= 2 * kMinRoom + 1;
  const bool can_split_y = h >= 2 * kMinRoom + 1;
  if (!can_split_x && !can_split_y) {
    return;
  }
  if (std::max(w, h) < 14 && chance(rng, 0.25)) {
    return;
  }
  const bool split_x = can_split_x && (!can_split_y || (w == h ? chance(rng, 0.5) : w > h));
  // A wall must not land on a doorway of the enclosing walls.
  std::vector<int> options;
  if (split_x) {
    for (int x = x0 + kMinRoom; x <= x1 - kMinRoom; ++x) {
      if (!c.free(x, y0 - 1) && !c.free(x, y1 + 1)) {
        options.push_back(x);
      }
    }
  } else {
    for (int y = y0 + kMinRoom; y <= y1 - kMinRoom; ++y) {
      if (!c.free(x0 - 1, y) && !c.free(x1 + 1, y)) {
        options.push_back(y);
      }
    }
  }
  if (options.empty()) {
    return;
  }
  const int wall = options[uniform(rng, 0, static_cast<int>(options.size()) - 1)];
  if (split_x) {
    c.rect(wall, y0, wall, y1, Cell::Occupied);
    const int door = uniform(rng, 2, std::min(3, h));
    const int start = uniform(rng, y0, y1 - door + 1);
    c.rect(wall, start, wall, start + door - 1, Cell::Free);
    divide(c, rng, x0, y0, wall - 1, y1);
    divide(c, rng, wall + 1, y0, x1, y1);
  } else {
    c.rect(x0, wall, x1, wall, Cell::Occupied);
    const int door = uniform(rng, 2, std::min(3, w));
    const int start = uniform(rng, x0, x1 - door + 1);
    c.rect(start, wall, start + door - 1, wall, Cell::Free);
    divide(c, rng, x0, y0, x1, wall - 1);
    divide(c, rng, x0, wall + 1, x1, y1);
  }
}

void rooms(Canvas & c, Rng & rng)
{
  c.fill(Cell::Free);
  c.border();
  divide(c, rng, 1, 1, c.width() - 2, c.height() - 2);
  // Furniture: small blocks with a two-cell free margin, so no passage closes.
  const int blocks = c.width() * c.height() / 50;
  for (int i = 0; i < blocks; ++i) {
    const int bw = uniform(rng, 1, 3);
    const int bh = uniform(rng, 1, 3);
    const int x = uniform(rng, 3, std::max(3, c.width() - 4 - bw));
    const int y = uniform(rng, 3, std::max(3, c.height() - 4 - bh));
    bool clear = true;
    for (int yy = y - 2; yy <= y + bh + 1 && clear; ++yy) {
      for (int xx = x - 2; xx <= x + bw + 1 && clear; ++xx) {
        clear = xx >= 0 && yy >= 0 && xx < c.width() && yy < c.height() && c.free(xx, yy);
      }
    }
    if (clear) {
      c.rect(x, y, x + bw - 1, y + bh - 1, Cell::Occupied);
    }
  }
}

void cave(Canvas & c, Rng & rng)
{
  c.fill(Cell::Occupied);
  for (int y = 1; y < c.height() - 1; ++y) {
    for (int x = 1; x < c.width() - 1; ++x) {
      c.at(x, y) = chance(rng, 0.42) ? Cell::Occupied : Cell::Free;
    }
  }
  for (int iteration = 0; iteration < 4; ++iteration) {
    Canvas next = c;
    for (int y = 1; y < c.height() - 1; ++y) {
      for (int x = 1; x < c.width() - 1; ++x) {
        int walls = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            walls += (dx != 0 || dy != 0) && !c.free(x + dx, y + dy) ? 1 : 0;
          }
        }
        next.at(x, y) = walls >= 5 ? Cell::Occupied : (walls <= 3 ? Cell::Free : c.at(x, y));
      }
    }
    c = next;
  }
  c.border();
}

/// Maze on a lattice of 2x2 rooms separated by one-cell walls, with a few
/// walls knocked out to create loops.
void corridor(Canvas & c, Rng & rng)
{
  c.fill(Cell::Occupied);
  const int cols = (c.width() - 1) / 3;
  const int rows = (c.height() - 1) / 3;
  auto open_unit = [&](int i, int j) {c.rect(1 + 3 * i, 1 + 3 * j, 2 + 3 * i, 2 + 3 * j, Cell::Free);};
  auto open_between = [&](int i, int j, int ni, int nj) {
      if (ni != i) {
        const int x = 3 + 3 * std::min(i, ni);
        c.rect(x, 1 + 3 * j, x, 2 + 3 * j, Cell::Free);
      } else {
        const int y = 3 + 3 * std::min(j, nj);
        c.rect(1 + 3 * i, y, 2 + 3 * i, y, Cell::Free);
      }
    };
  std::vector<bool> seen(static_cast<std::size_t>(cols * rows), false);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  seen[0] = true;
  open_unit(0, 0);
  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    int options[4];
    int count = 0;
    for (int d = 0; d < 4; ++d) {
      const int ni = i + di[d];
      const int nj = j + dj[d];
      if (ni >= 0 && nj >= 0 && ni < cols && nj < rows && !seen[nj * cols + ni]) {
        options[count++] = d;
      }
    }
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    const int d = options[uniform(rng, 0, count - 1)];
    const int ni = i + di[d];
    const int nj = j + dj[d];
    seen[nj * cols + ni] = true;
    open_unit(ni, nj);
    open_between(i, j, ni, nj);
    stack.emplace_back(ni, nj);
  }
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < cols; ++i) {
      if (i + 1 < cols && chance(rng, 0.12)) {
        open_between(i, j, i + 1, j);
      }
      if (j + 1 < rows && chance(rng, 0.12)) {
        open_between(i, j, i, j + 1);
      }
    }
  }
  c.border();
}

/// Keeps only free cells covered by some fully free 2x2 block.
void open_narrow_gaps(Canvas & c)
{
  Canvas out = c;
  for (int y = 0; y < c.height(); ++y) {
    for (int x = 0; x < c.width(); ++x) {
      if (!c.free(x, y)) {
        continue;
      }
      bool covered = false;
      for (int oy = -1; oy <= 0 && !covered; ++oy) {
        for (int ox = -1; ox <= 0 && !covered; ++ox) {
          const int bx = x + ox;
          const int by = y + oy;
          covered = bx >= 0 && by >= 0 && bx + 1 < c.width() && by + 1 < c.height() &&
            c.free(bx, by) && c.free(bx + 1, by) && c.free(bx, by + 1) && c.free(bx + 1, by + 1);
        }
      }
      if (!covered) {
        out.at(x, y) = Cell::Occupied;
      }
    }
  }
  c = out;
}

/// Fills every free component except the largest (ties to the one met first
/// in row-major order). Returns the size of the kept component.
int keep_largest_component(Canvas & c, const world::GridShape & shape)
{
  std::vector<bool> assigned(c.cells().size(), false);
  std::vector<bool> best;
  int best_size = 0;
  for (int y = 0; y < c.height(); ++y) {
    for (int x = 0; x < c.width(); ++x) {
      if (!c.free(x, y) || assigned[y * c.width() + x]) {
        continue;
      }
      std::vector<bool> comp = world::flood_fill_free(shape, c.cells(), {x, y});
      const int size = static_cast<int>(std::count(comp.begin(), comp.end(), true));
      for (std::size_t i = 0; i < comp.size(); ++i) {
        if (comp[i]) {
          assigned[i] = true;
        }
      }
      if (size > best_size) {
        best_size = size;
        best = std::move(comp);
      }
    }
  }
  for (std::size_t i = 0; i < c.cells().size(); ++i) {
    if (best.empty() || !best[i]) {
      c.cells()[i] = Cell::Occupied;
    }
  }
  return best_size;
}

}  // namespace

world::GroundTruthMap generate_map(std::uint64_t seed, const MapSpec & spec)
{
  if (spec.width < 10 || spec.height < 10) {
    throw ConfigError("maps must be at least 10x10");
  }
  if (!(spec.cell_size > 0.0)) {
    throw ConfigError("cell size must be positive");
  }
  const world::GridShape shape{spec.width, spec.height, spec.cell_size};
  Rng rng(seed);
  const double min_separation = 0.6 * std::hypot(spec.width, spec.height);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Canvas c(spec.width, spec.height);
    switch (spec.style) {
      case MapStyle::Rooms: rooms(c, rng); break;
      case MapStyle::Cave: cave(c, rng); break;
      case MapStyle::Corridor: corridor(c, rng); break;
    }
    // Opening can split a component; only the largest one is kept.
    open_narrow_gaps(c);
    if (keep_largest_component(c, shape) < 8) {
      continue;
    }
    std::vector<CellIndex> free;
    for (int y = 0; y < c.height(); ++y) {
      for (int x = 0; x < c.width(); ++x) {
        if (c.free(x, y)) {
          free.push_back({x, y});
        }
      }
    }
    for (int tries = 0; tries < 20; ++tries) {
      const CellIndex start = free[uniform(rng, 0, static_cast<int>(free.size()) - 1)];
      std::vector<CellIndex> far;
      for (CellIndex f : free) {
        if (std::hypot(f.x - start.x, f.y - start.y) >= min_separation) {
          far.push_back(f);
        }
      }
      if (!far.empty()) {
        const CellIndex target = far[uniform(rng, 0, static_cast<int>(far.size()) - 1)];
        return world::GroundTruthMap(shape, c.cells(), start, target);
      }
    }
  }
  throw ConfigError("could not generate a valid " + to_string(spec.style) + " map");
}

std::vector<world::GroundTruthMap> generate_maps(std::uint64_t seed, int count, const MapSpec & spec)
{
  std::vector<world::GroundTruthMap> maps;
  maps.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(i)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    maps.push_back(generate_map((static_cast<std::uint64_t>(words[0]) << 32) | words[1], spec));
  }
  return maps;
}

}  // namespace hiernav::runner
