#ifndef HIERNAV_WORLD_GRID_HPP_
#define HIERNAV_WORLD_GRID_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hiernav::world
{

enum class Cell : std::uint8_t { Free, Occupied };
enum class Belief : std::uint8_t { Unknown, Free, Occupied };

/// Integer cell coordinate; x is the column, y the row (row 0 is the first map line).
struct CellIndex
{
  int x{0};
  int y{0};

  friend bool operator==(const CellIndex &, const CellIndex &) = default;
};

/// Continuous position in meters.
struct Point
{
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point &, const Point &) = default;
};

double distance(const Point & a, const Point & b);

/// Shape shared by a ground-truth map and its belief.
struct GridShape
{
  int width{0};
  int height{0};
  double cell_size{1.0};

  bool contains(CellIndex c) const {return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height;}
  int index(CellIndex c) const {return c.y * width + c.x;}
  CellIndex cell(int index) const {return {index % width, index / width};}
  int cell_count() const {return width * height;}
  Point center(CellIndex c) const {return {(c.x + 0.5) * cell_size, (c.y + 0.5) * cell_size};}
  /// Cell containing `p`; points on a boundary belong to the upper/right cell.
  CellIndex cell_at(const Point & p) const;
  bool contains(const Point & p) const;
  double width_m() const {return width * cell_size;}
  double height_m() const {return height * cell_size;}
  double diagonal_m() const;

  friend bool operator==(const GridShape &, const GridShape &) = default;
};

/// Parse or validation failure. Row/column are 0-based grid coordinates
/// (the optional comment line is not counted as a row); -1 when not applicable.
class MapFormatError : public std::runtime_error
{
public:
  MapFormatError(const std::string & what, int row, int column);
  int row() const {return row_;}
  int column() const {return column_;}

private:
  int row_;
  int column_;
};

/// The true environment. Immutable once constructed.
class GroundTruthMap
{
public:
  /// Throws MapFormatError when start/target are not free or the target is
  /// not 4-connected to the start.
  GroundTruthMap(
    GridShape shape, std::vector<Cell> cells, CellIndex start,
    std::optional<CellIndex> target = std::nullopt);

  const GridShape & shape() const {return shape_;}
  int width() const {return shape_.width;}
  int height() const {return shape_.height;}
  double cell_size() const {return shape_.cell_size;}

  Cell at(CellIndex c) const {return cells_[shape_.index(c)];}
  bool occupied(CellIndex c) const {return at(c) == Cell::Occupied;}
  const std::vector<Cell> & cells() const {return cells_;}

  CellIndex start() const {return start_;}
  const std::optional<CellIndex> & target() const {return target_;}

  /// Per-cell flag: free and 4-connected to the start.
  const std::vector<bool> & reachable() const {return reachable_;}
  int reachable_count() const {return reachable_count_;}
  int occupied_count() const;

private:
  GridShape shape_;
  std::vector<Cell> cells_;
  CellIndex start_;
  std::optional<CellIndex> target_;
  std::vector<bool> reachable_;
  int reachable_count_{0};
};

/// The robot's partial map. Cells only move from Unknown to a known label.
class BeliefMap
{
public:
  explicit BeliefMap(GridShape shape);

  const GridShape & shape() const {return shape_;}
  int width() const {return shape_.width;}
  int height() const {return shape_.height;}

  Belief at(CellIndex c) const {return cells_[shape_.index(c)];}
  Belief at(int index) const {return cells_[index];}
  bool known(CellIndex c) const {return at(c) != Belief::Unknown;}
  int known_count() const {return known_count_;}

  /// Labels an Unknown cell. Returns false (and changes nothing) if already known.
  bool reveal(CellIndex c, Cell truth);

  /// Belief with every cell set to its ground-truth label.
  static BeliefMap fully_revealed(const GroundTruthMap & truth);

private:
  GridShape shape_;
  std::vector<Belief> cells_;
  int known_count_{0};
};

/// Flood fill over 4-connected free cells from `seed`.
std::vector<bool> flood_fill_free(const GridShape & shape, const std::vector<Cell> & cells, CellIndex seed);

/// Parses the text map format: '.' free, '#' occupied, 'S' start, 'T' target.
/// An optional first line starting with ';' may carry `cell_size=<float>`.
GroundTruthMap load_map(std::string_view text);
GroundTruthMap load_map_file(const std::string & path);

/// Inverse of load_map (emits the comment line only when cell_size != 1).
std::string to_text(const GroundTruthMap & map);

}  // namespace hiernav::world

#endif  // HIERNAV_WORLD_GRID_HPP_
