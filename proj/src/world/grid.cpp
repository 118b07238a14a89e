#include "hiernav/world/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hiernav::world
{

double distance(const Point & a, const Point & b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

CellIndex GridShape::cell_at(const Point & p) const
{
  return {static_cast<int>(std::floor(p.x / cell_size)), static_cast<int>(std::floor(p.y / cell_size))};
}

bool GridShape::contains(const Point & p) const
{
  return p.x >= 0.0 && p.y >= 0.0 && p.x <= width_m() && p.y <= height_m();
}

double GridShape::diagonal_m() const
{
  return std::hypot(width_m(), height_m());
}

namespace
{

std::string at_position(const std::string & what, int row, int column)
{
  std::ostringstream os;
  os << what;
  if (row >= 0) {
    os << " (row " << row;
    if (column >= 0) {
      os << ", column " << column;
    }
    os << ")";
  }
  return os.str();
}

}  // namespace

MapFormatError::MapFormatError(const std::string & what, int row, int column)
: std::runtime_error(at_position(what, row, column)), row_(row), column_(column)
{
}

std::vector<bool> flood_fill_free(const GridShape & shape, const std::vector<Cell> & cells, CellIndex seed)
{
  std::vector<bool> seen(cells.size(), false);
  if (!shape.contains(seed) || cells[shape.index(seed)] != Cell::Free) {
    return seen;
  }
  std::vector<CellIndex> stack{seed};
  seen[shape.index(seed)] = true;
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dy[4] = {0, 0, 1, -1};
  while (!stack.empty()) {
    const CellIndex c = stack.back();
    stack.pop_back();
    for (int k = 0; k < 4; ++k) {
      const CellIndex n{c.x + dx[k], c.y + dy[k]};
      if (!shape.contains(n)) {
        continue;
      }
      const int i = shape.index(n);
      if (!seen[i] && cells[i] == Cell::Free) {
        seen[i] = true;
        stack.push_back(n);
      }
    }
  }
  return seen;
}

GroundTruthMap::GroundTruthMap(
  GridShape shape, std::vector<Cell> cells, CellIndex start,
  std::optional<CellIndex> target)
: shape_(shape), cells_(std::move(cells)), start_(start), target_(target)
{
  if (shape_.width < 1 || shape_.height < 1) {
    throw MapFormatError("map must have at least one row and column", -1, -1);
  }
  if (!(shape_.cell_size > 0.0) || !std::isfinite(shape_.cell_size)) {
    throw MapFormatError("cell_size must be positive", -1, -1);
  }
  if (static_cast<int>(cells_.size()) != shape_.cell_count()) {
    throw MapFormatError("cell count does not match map dimensions", -1, -1);
  }
  if (!shape_.contains(start_) || occupied(start_)) {
    throw MapFormatError("start must lie in a free cell", start_.y, start_.x);
  }
  reachable_ = flood_fill_free(shape_, cells_, start_);
  for (bool r : reachable_) {
    reachable_count_ += r ? 1 : 0;
  }
  if (target_) {
    if (!shape_.contains(*target_) || occupied(*target_)) {
      throw MapFormatError("target must lie in a free cell", target_->y, target_->x);
    }
    if (!reachable_[shape_.index(*target_)]) {
      throw MapFormatError("target is not reachable from start", target_->y, target_->x);
    }
  }
}

int GroundTruthMap::occupied_count() const
{
  int n = 0;
  for (Cell c : cells_) {
    n += c == Cell::Occupied ? 1 : 0;
  }
  return n;
}

BeliefMap::BeliefMap(GridShape shape)
: shape_(shape), cells_(static_cast<std::size_t>(shape.cell_count()), Belief::Unknown)
{
}

bool BeliefMap::reveal(CellIndex c, Cell truth)
{
  Belief & b = cells_[shape_.index(c)];
  if (b != Belief::Unknown) {
    return false;
  }
  b = truth == Cell::Free ? Belief::Free : Belief::Occupied;
  ++known_count_;
  return true;
}

BeliefMap BeliefMap::fully_revealed(const GroundTruthMap & truth)
{
  BeliefMap belief(truth.shape());
  for (int i = 0; i < truth.shape().cell_count(); ++i) {
    belief.reveal(truth.shape().cell(i), truth.cells()[i]);
  }
  return belief;
}

GroundTruthMap load_map(std::string_view text)
{
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string line(text.substr(pos, end - pos));
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      lines.push_back(std::move(line));
      pos = end + 1;
    }
  }
  while (!lines.empty() && lines.back().empty()) {
    lines.pop_back();
  }

  double cell_size = 1.0;
  std::size_t first = 0;
  if (!lines.empty() && !lines.front().empty() && lines.front().front() == ';') {
    const std::string & comment = lines.front();
    const auto key = comment.find("cell_size=");
    if (key != std::string::npos) {
      const std::string value = comment.substr(key + 10);
      try {
        std::size_t used = 0;
        cell_size = std::stod(value, &used);
      } catch (const std::exception &) {
        throw MapFormatError("invalid cell_size in comment line", -1, -1);
      }
    }
    first = 1;
  }
  if (first >= lines.size()) {
    throw MapFormatError("map has no rows", -1, -1);
  }

  const int height = static_cast<int>(lines.size() - first);
  const int width = static_cast<int>(lines[first].size());
  if (width == 0) {
    throw MapFormatError("map row is empty", 0, 0);
  }
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  std::optional<CellIndex> start;
  std::optional<CellIndex> target;
  for (int row = 0; row < height; ++row) {
    const std::string & line = lines[first + row];
    if (static_cast<int>(line.size()) != width) {
      throw MapFormatError(
              "ragged row: expected " + std::to_string(width) + " columns, found " +
              std::to_string(line.size()), row, std::min<int>(width, line.size()));
    }
    for (int col = 0; col < width; ++col) {
      switch (line[col]) {
        case '.':
          cells.push_back(Cell::Free);
          break;
        case '#':
          cells.push_back(Cell::Occupied);
          break;
        case 'S':
          if (start) {
            throw MapFormatError("duplicate start marker 'S'", row, col);
          }
          start = CellIndex{col, row};
          cells.push_back(Cell::Free);
          break;
        case 'T':
          if (target) {
            throw MapFormatError("duplicate target marker 'T'", row, col);
          }
          target = CellIndex{col, row};
          cells.push_back(Cell::Free);
          break;
        default:
          throw MapFormatError(std::string("unknown character '") + line[col] + "'", row, col);
      }
    }
  }
  if (!start) {
    throw MapFormatError("missing start marker 'S'", -1, -1);
  }
  return GroundTruthMap(GridShape{width, height, cell_size}, std::move(cells), *start, target);
}

GroundTruthMap load_map_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open map file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_map(buffer.str());
}

std::string to_text(const GroundTruthMap & map)
{
  std::ostringstream os;
  if (map.cell_size() != 1.0) {
    os << "; cell_size=" << map.cell_size() << '\n';
  }
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const CellIndex c{x, y};
      char ch = map.occupied(c) ? '#' : '.';
      if (c == map.start()) {
        ch = 'S';
      } else if (map.target() && c == *map.target()) {
        ch = 'T';
      }
      os << ch;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace hiernav::world
