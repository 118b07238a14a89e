#ifndef HIERNAV_RUNNER_MAPGEN_HPP_
#define HIERNAV_RUNNER_MAPGEN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hiernav/world/grid.hpp"

namespace hiernav::runner
{

enum class MapStyle { Rooms, Cave, Corridor };

std::string to_string(MapStyle style);
/// Throws ConfigError.
MapStyle parse_style(const std::string & name);

struct MapSpec
{
  MapStyle style{MapStyle::Rooms};
  int width{40};
  int height{30};
  double cell_size{1.0};
};

/// One map: bordered by walls, free space a single 4-connected component in
/// which every free cell lies in a fully free 2x2 block, start and target
/// free and at least 60% of the map diagonal apart. Throws ConfigError for
/// maps smaller than 10x10.
world::GroundTruthMap generate_map(std::uint64_t seed, const MapSpec & spec);

/// `count` maps; map i depends only on (seed, i, spec).
std::vector<world::GroundTruthMap> generate_maps(std::uint64_t seed, int count, const MapSpec & spec);

/// File name used for map i of a corpus.
std::string map_file_name(int index);

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_MAPGEN_HPP_
